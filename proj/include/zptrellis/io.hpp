#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zptrellis/charmatrix.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/group.hpp"
#include "zptrellis/pbasis.hpp"

namespace zpt {

/// A parsed code file: ring or group header plus generator rows.
struct CodeFile {
    bool is_group = false;
    RingSpec ring;
    AbelianGroupSpec group;
    std::size_t n = 0;
    std::vector<Codeword> rows;             ///< ring files
    std::vector<GroupCodeword> group_rows;  ///< group files

    friend bool operator==(const CodeFile& a, const CodeFile& b) {
        return a.is_group == b.is_group && a.n == b.n &&
               (a.is_group ? a.group == b.group && a.group_rows == b.group_rows : a.ring == b.ring && a.rows == b.rows);
    }
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t line, std::size_t col, const char* what) {
    if (s.empty()) throw ParseError(std::string("expected ") + what, line, col);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError(std::string("expected ") + what + ", got '" + std::string(s) + "'", line, col + i);
        v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (v > std::numeric_limits<std::uint32_t>::max())
            throw ParseError(std::string(what) + " out of range", line, col);
    }
    return v;
}

inline std::vector<std::uint32_t> parse_uint_list(std::string_view s, char sep, std::size_t line, std::size_t col,
                                                  const char* what) {
    std::vector<std::uint32_t> out;
    std::size_t i = 0;
    for (;;) {
        std::size_t j = s.find(sep, i);
        std::string_view part = s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
        out.push_back(static_cast<std::uint32_t>(parse_uint(part, line, col + i, what)));
        if (j == std::string_view::npos) break;
        i = j + 1;
    }
    return out;
}

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

inline std::vector<Line> significant_lines(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    std::size_t no = 0;
    while (std::getline(in, s)) {
        ++no;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        auto t = tokenize(s);
        if (!t.empty()) out.push_back({no, std::move(t)});
    }
    return out;
}

/// `ring p^a n` or `group n1,n2,... n`; fills the header fields of f.
inline void parse_header(const Line& l, CodeFile& f) {
    const auto& t = l.tokens;
    if (t[0].text != "ring" && t[0].text != "group")
        throw ParseError("expected 'ring' or 'group' header, got '" + t[0].text + "'", l.number, t[0].column);
    if (t.size() != 3)
        throw ParseError("header needs exactly two fields after '" + t[0].text + "'", l.number, t[0].column);
    f.n = parse_uint(t[2].text, l.number, t[2].column, "code length");
    if (f.n == 0) throw ParseError("code length must be positive", l.number, t[2].column);
    if (t[0].text == "ring") {
        auto caret = t[1].text.find('^');
        if (caret == std::string::npos) throw ParseError("ring must be written p^alpha", l.number, t[1].column);
        auto p = parse_uint(std::string_view(t[1].text).substr(0, caret), l.number, t[1].column, "prime");
        auto a = parse_uint(std::string_view(t[1].text).substr(caret + 1), l.number, t[1].column + caret + 1,
                            "exponent");
        try {
            f.ring = RingSpec(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(a));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), l.number, t[1].column);
        }
    } else {
        f.is_group = true;
        auto orders = parse_uint_list(t[1].text, ',', l.number, t[1].column, "cyclic order");
        try {
            f.group = AbelianGroupSpec(orders);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), l.number, t[1].column);
        }
    }
}

inline Codeword parse_ring_row(const Line& l, const RingSpec& spec, std::size_t begin, std::size_t n) {
    const auto& t = l.tokens;
    if (t.size() - begin != n) {
        std::size_t col = begin < t.size() ? t[begin].column : (t.empty() ? 1 : t.back().column);
        throw ParseError("expected " + std::to_string(n) + " entries, got " + std::to_string(t.size() - begin),
                         l.number, col);
    }
    std::vector<Residue> s;
    for (std::size_t i = begin; i < t.size(); ++i) {
        auto v = parse_uint(t[i].text, l.number, t[i].column, "ring element");
        if (v >= spec.modulus())
            throw ParseError("entry " + t[i].text + " is not below " + std::to_string(spec.modulus()), l.number,
                             t[i].column);
        s.push_back(static_cast<Residue>(v));
    }
    return Codeword(spec, std::move(s));
}

inline GroupCodeword parse_group_row(const Line& l, const AbelianGroupSpec& g, std::size_t n) {
    const auto& t = l.tokens;
    if (t.size() != n)
        throw ParseError("expected " + std::to_string(n) + " entries, got " + std::to_string(t.size()), l.number,
                         t.front().column);
    GroupCodeword w;
    for (const auto& tok : t) {
        auto parts = parse_uint_list(tok.text, ':', l.number, tok.column, "group component");
        if (parts.size() != g.cyclic_orders.size())
            throw ParseError("group entry '" + tok.text + "' needs " + std::to_string(g.cyclic_orders.size()) +
                                 " components",
                             l.number, tok.column);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (parts[j] >= g.cyclic_orders[j])
                throw ParseError("component " + std::to_string(parts[j]) + " is not below " +
                                     std::to_string(g.cyclic_orders[j]),
                                 l.number, tok.column);
        w.symbols.push_back(std::move(parts));
    }
    return w;
}

inline std::string ring_header(const RingSpec& spec, std::size_t n) {
    return "ring " + std::to_string(spec.p()) + "^" + std::to_string(spec.alpha()) + " " + std::to_string(n);
}

inline std::string row_text(const Codeword& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(x[i]);
    }
    return s;
}

inline CyclicSpan parse_span(const Token& tok, std::size_t line, std::size_t n) {
    const std::string& s = tok.text;
    if (s == "full") return CyclicSpan::full(n);
    if (s == "empty") return CyclicSpan::empty(n);
    auto comma = s.find(',');
    if (s.size() < 5 || s.front() != '(' || s.back() != ']' || comma == std::string::npos)
        throw ParseError("expected span (a,b], got '" + s + "'", line, tok.column);
    auto a = parse_uint(std::string_view(s).substr(1, comma - 1), line, tok.column + 1, "span start");
    auto b = parse_uint(std::string_view(s).substr(comma + 1, s.size() - comma - 2), line, tok.column + comma + 1,
                        "span end");
    if (a >= n || b >= n) throw ParseError("span endpoint out of range", line, tok.column);
    return CyclicSpan::interval(a, b, n);
}

} // namespace detail

inline CodeFile parse_code_file(std::istream& in) {
    auto lines = detail::significant_lines(in);
    if (lines.empty()) throw ParseError("empty input: missing header", 1, 1);
    CodeFile f;
    detail::parse_header(lines[0], f);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (f.is_group)
            f.group_rows.push_back(detail::parse_group_row(lines[i], f.group, f.n));
        else
            f.rows.push_back(detail::parse_ring_row(lines[i], f.ring, 0, f.n));
    }
    return f;
}

inline CodeFile parse_code_file(const std::string& text) {
    std::istringstream in(text);
    return parse_code_file(in);
}

inline CodeFile load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_code_file(in);
}

inline std::string format_code_file(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& rows) {
    std::string s = detail::ring_header(spec, n) + "\n";
    for (const auto& r : rows) s += detail::row_text(r) + "\n";
    return s;
}

inline std::string format_code_file(const CodeFile& f) {
    if (!f.is_group) return format_code_file(f.ring, f.n, f.rows);
    std::string s = "group " + f.group.to_string() + " " + std::to_string(f.n) + "\n";
    for (const auto& r : f.group_rows) {
        for (std::size_t i = 0; i < r.symbols.size(); ++i) {
            if (i) s += ' ';
            for (std::size_t j = 0; j < r.symbols[i].size(); ++j) {
                if (j) s += ':';
                s += std::to_string(r.symbols[i][j]);
            }
        }
        s += "\n";
    }
    return s;
}

/// Header, `dimension k`, `columns k_0 ... k_{n-1}`, then one `codeword | span | o1 o2` line per row.
inline std::string format_char_matrix(const CharMatrix& x) {
    std::string s = detail::ring_header(x.spec, x.n) + "\n";
    s += "dimension " + std::to_string(x.dimension) + "\n";
    s += "columns";
    for (auto k : x.column_exps) s += " " + std::to_string(k);
    s += "\n";
    for (const auto& g : x.rows)
        s += detail::row_text(g.codeword) + " | " + g.span.to_string() + " | " + std::to_string(g.o1_exp) + " " +
             std::to_string(g.o2_exp) + "\n";
    return s;
}

inline CharMatrix parse_char_matrix(std::istream& in) {
    auto lines = detail::significant_lines(in);
    if (lines.size() < 3) throw ParseError("characteristic matrix needs header, dimension and columns lines", 1, 1);
    CodeFile f;
    detail::parse_header(lines[0], f);
    if (f.is_group) throw ParseError("characteristic matrix needs a ring header", lines[0].number, 1);
    CharMatrix x;
    x.spec = f.ring;
    x.n = f.n;
    const auto& d = lines[1];
    if (d.tokens[0].text != "dimension" || d.tokens.size() != 2)
        throw ParseError("expected 'dimension <k>'", d.number, d.tokens[0].column);
    x.dimension = detail::parse_uint(d.tokens[1].text, d.number, d.tokens[1].column, "dimension");
    const auto& c = lines[2];
    if (c.tokens[0].text != "columns" || c.tokens.size() != x.n + 1)
        throw ParseError("expected 'columns' followed by " + std::to_string(x.n) + " exponents", c.number,
                         c.tokens[0].column);
    for (std::size_t i = 1; i < c.tokens.size(); ++i)
        x.column_exps.push_back(
            static_cast<std::uint32_t>(detail::parse_uint(c.tokens[i].text, c.number, c.tokens[i].column, "exponent")));
    for (std::size_t li = 3; li < lines.size(); ++li) {
        const auto& l = lines[li];
        const auto& t = l.tokens;
        // n entries, '|', span, '|', o1, o2
        if (t.size() != x.n + 5 || t[x.n].text != "|" || t[x.n + 2].text != "|")
            throw ParseError("expected 'codeword | (a,b] | o1 o2'", l.number, t.front().column);
        detail::Line head{l.number, std::vector<detail::Token>(t.begin(), t.begin() + x.n)};
        CharGenerator g;
        g.codeword = detail::parse_ring_row(head, x.spec, 0, x.n);
        g.span = detail::parse_span(t[x.n + 1], l.number, x.n);
        g.o1_exp = static_cast<std::uint32_t>(detail::parse_uint(t[x.n + 3].text, l.number, t[x.n + 3].column, "order"));
        g.o2_exp = static_cast<std::uint32_t>(detail::parse_uint(t[x.n + 4].text, l.number, t[x.n + 4].column, "order"));
        x.rows.push_back(std::move(g));
    }
    return x;
}

inline CharMatrix parse_char_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_char_matrix(in);
}

inline nlohmann::json span_to_json(const CyclicSpan& s) {
    if (s.is_full()) return {{"kind", "full"}};
    if (s.is_empty()) return {{"kind", "empty"}};
    return {{"kind", "interval"}, {"a", s.a()}, {"b", s.b()}};
}

inline nlohmann::json char_matrix_to_json(const CharMatrix& x) {
    nlohmann::json j;
    j["ring"] = {{"p", x.spec.p()}, {"alpha", x.spec.alpha()}};
    j["n"] = x.n;
    j["dimension"] = x.dimension;
    j["column_exponents"] = x.column_exps;
    j["rows"] = nlohmann::json::array();
    for (const auto& g : x.rows)
        j["rows"].push_back({{"codeword", g.codeword.symbols()},
                             {"span", span_to_json(g.span)},
                             {"o1", g.o1_exp},
                             {"o2", g.o2_exp}});
    return j;
}

inline CharMatrix char_matrix_from_json(const nlohmann::json& j) {
    try {
        CharMatrix x;
        x.spec = RingSpec(j.at("ring").at("p").get<std::uint32_t>(), j.at("ring").at("alpha").get<std::uint32_t>());
        x.n = j.at("n").get<std::size_t>();
        x.dimension = j.at("dimension").get<std::size_t>();
        x.column_exps = j.at("column_exponents").get<std::vector<std::uint32_t>>();
        for (const auto& r : j.at("rows")) {
            CharGenerator g;
            g.codeword = Codeword(x.spec, r.at("codeword").get<std::vector<Residue>>());
            if (g.codeword.size() != x.n) throw ParseError("json: codeword length differs from n");
            const auto& s = r.at("span");
            const auto kind = s.at("kind").get<std::string>();
            if (kind == "full")
                g.span = CyclicSpan::full(x.n);
            else if (kind == "empty")
                g.span = CyclicSpan::empty(x.n);
            else
                g.span = CyclicSpan::interval(s.at("a").get<std::size_t>(), s.at("b").get<std::size_t>(), x.n);
            g.o1_exp = r.at("o1").get<std::uint32_t>();
            g.o2_exp = r.at("o2").get<std::uint32_t>();
            x.rows.push_back(std::move(g));
        }
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

/// Received word: comma- or space-separated integers (ring symbols) or ':'-tuples (group symbols).
inline Word parse_received(const std::string& text, const Alphabet& a) {
    std::string s = text;
    for (auto& c : s)
        if (c == ',') c = ' ';
    auto toks = detail::tokenize(s);
    Word w;
    for (const auto& t : toks) {
        auto parts = detail::parse_uint_list(t.text, ':', 1, t.column, "received symbol");
        if (parts.size() == 1 && a.moduli().size() > 1) {
            if (parts[0] >= a.size()) throw ParseError("received symbol out of range", 1, t.column);
            w.push_back(parts[0]);
            continue;
        }
        if (parts.size() != a.moduli().size()) throw ParseError("received symbol has wrong arity", 1, t.column);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (parts[j] >= a.moduli()[j]) throw ParseError("received symbol out of range", 1, t.column);
        w.push_back(a.encode(std::vector<std::uint32_t>(parts.begin(), parts.end())));
    }
    return w;
}

} // namespace zpt
