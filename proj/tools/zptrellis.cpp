// zptrellis: bases, characteristic matrices, tail-biting trellises and decoding for
// linear codes over Z_{p^alpha} and group codes over finite abelian groups.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zptrellis/charmatrix.hpp"
#include "zptrellis/group.hpp"
#include "zptrellis/io.hpp"
#include "zptrellis/oracle.hpp"
#include "zptrellis/pbasis.hpp"
#include "zptrellis/random.hpp"
#include "zptrellis/search.hpp"
#include "zptrellis/trellis.hpp"
#include "zptrellis/viterbi.hpp"

using namespace zpt;

namespace {

enum Exit { Ok = 0, InputError = 2, Internal = 3, Infeasible = 4 };

/// Thrown for bad flag combinations that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CodeFile& require_ring(const CodeFile& f, const char* cmd) {
    if (f.is_group) throw UsageError(std::string(cmd) + " needs a ring code file");
    return f;
}

ReductionOptions reduction(const std::string& coeffs) {
    ReductionOptions o;
    o.coefficients = coeffs == "plinear" ? CoefficientRange::PLinear : CoefficientRange::Full;
    return o;
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void print_profile(std::ostream& os, const Profile& p) {
    os << "vertices " << join(p.vertices) << "\n";
    os << "edges " << join(p.edges) << "\n";
}

std::string format_word(const Word& w, const Alphabet& a) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + a.format(w[i]);
    return s;
}

void write_dot(const std::string& path, const Trellis& t) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << to_dot(t);
}

// 1-based, comma separated
std::vector<std::size_t> parse_indices(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("--spans expects 'conventional' or a list like 1,4,5; got '" + s + "'");
        std::size_t v = std::stoul(item);
        if (v == 0) throw UsageError("generator indices start at 1");
        out.push_back(v - 1);
    }
    if (out.empty()) throw UsageError("empty generator list");
    return out;
}

int cmd_pbasis(const std::string& file, const std::string& stage, const std::string& coeffs) {
    CodeFile f = load_code_file(file);
    require_ring(f, "pbasis");
    PBasis b;
    b.spec = f.ring;
    b.n = f.n;
    std::vector<Codeword> nonzero;
    for (const auto& r : f.rows)
        if (!r.is_zero()) nonzero.push_back(r);
    if (!nonzero.empty()) {
        auto seq = p_generators_from_matrix(nonzero);
        if (stage == "A")
            b = algorithm_A(seq);
        else if (stage == "B")
            b = algorithm_B(algorithm_A(seq));
        else
            b = lex_first_biproper_basis(nonzero, reduction(coeffs));
    }
    std::cout << format_code_file(f.ring, f.n, b.rows);
    return Ok;
}

int cmd_charmat(const std::string& file, const std::string& method, const std::string& format, bool check,
                const std::string& coeffs) {
    CodeFile f = load_code_file(file);
    require_ring(f, "charmat");
    CharMatrixOptions opts;
    opts.reduction = reduction(coeffs);
    const CharMethod m = method == "naive" ? CharMethod::Naive : CharMethod::Incremental;
    CharMatrix x = characteristic_matrix(f.ring, f.n, f.rows, m, opts);
    if (check) {
        CharMatrix other = characteristic_matrix(f.ring, f.n, f.rows,
                                                 m == CharMethod::Naive ? CharMethod::Incremental : CharMethod::Naive,
                                                 opts);
        if (!same_rows(x, other))
            throw InconsistencyError("naive and incremental characteristic matrices differ");
        auto report = validate_char_matrix(x);
        if (!report.ok()) throw InconsistencyError("characteristic matrix fails validation: " + report.violations[0]);
    }
    if (format == "json")
        std::cout << char_matrix_to_json(x).dump(2) << "\n";
    else
        std::cout << format_char_matrix(x);
    return Ok;
}

struct TrellisArgs {
    std::string file;
    std::string spans;
    std::string search;
    std::string dot;
    bool profile = false;
};

int cmd_trellis_group(const CodeFile& f, const TrellisArgs& a) {
    if (!a.spans.empty()) throw UsageError("group codes support --search only");
    const Order order = parse_order(a.search.empty() ? "product" : a.search);
    Trellis t = group_minimal_tailbiting(f.group, f.n, f.group_rows, order);
    std::cout << "group " << f.group.to_string() << " n=" << f.n << " order=" << order_name(order) << "\n";
    std::cout << "codewords " << represented_code(t).size() << "\n";
    print_profile(std::cout, profile(t));
    if (!a.dot.empty()) write_dot(a.dot, t);
    return Ok;
}

int cmd_trellis(const TrellisArgs& a) {
    CodeFile f = load_code_file(a.file);
    if (f.is_group) return cmd_trellis_group(f, a);
    if (!a.spans.empty() && !a.search.empty()) throw UsageError("--spans and --search are exclusive");

    if (!a.search.empty()) {
        const Order order = parse_order(a.search);
        CharMatrix x = characteristic_matrix(f.ring, f.n, f.rows);
        if (x.dimension == 0) throw InfeasibleError("the zero code has no generators to search");
        auto res = search_minimal_tailbiting(x, x.dimension, order);
        std::cout << "search order=" << order_name(order) << " results=" << res.size() << "\n";
        for (const auto& r : res) {
            std::cout << "generators";
            for (auto i : r.indices) std::cout << " " << i + 1;
            if (order != Order::Theta)
                std::cout << " | value " << detail::order_value(r.profile, f.n, order).str();
            std::cout << " | vertices " << join(r.profile.vertices) << " | edges " << join(r.profile.edges) << "\n";
        }
        if (!a.dot.empty()) write_dot(a.dot, res.front().trellis);
        return Ok;
    }

    Trellis t = Trellis::trivial(f.n, Alphabet::ring(f.ring));
    bool conventional = a.spans.empty() || a.spans == "conventional";
    if (conventional) {
        auto b = lex_first_biproper_basis(f.ring, f.n, f.rows);
        t = build_from_generators(f.ring, f.n, with_conventional_spans(b.rows));
        std::cout << "conventional trellis from " << b.rows.size() << " generators\n";
    } else {
        CharMatrix x = characteristic_matrix(f.ring, f.n, f.rows);
        t = trellis_from_selection(x, parse_indices(a.spans));
        std::cout << "trellis from generators " << a.spans << "\n";
    }
    std::cout << "tail-biting " << (t.tail_biting() ? "yes" : "no") << "\n";
    print_profile(std::cout, profile(t));
    if (a.profile && conventional) {
        auto want = minimal_conventional_profile(enumerate_code(f.ring, f.n, f.rows), f.n);
        if (want != profile(t)) throw InconsistencyError("profile differs from the state-space count");
        std::cout << "state-space oracle: match\n";
    }
    if (!a.dot.empty()) write_dot(a.dot, t);
    return Ok;
}

int cmd_decode(const std::string& file, const std::string& received, const std::string& metric, bool oracle) {
    if (metric != "hamming") throw UsageError("unknown metric '" + metric + "'");
    CodeFile f = load_code_file(file);
    Trellis t;
    WordSet code;
    Alphabet alpha;
    if (f.is_group) {
        alpha = f.group.alphabet();
        t = group_minimal_tailbiting(f.group, f.n, f.group_rows);
        if (oracle) code = enumerate_group_code(f.group, f.n, f.group_rows);
    } else {
        alpha = Alphabet::ring(f.ring);
        CharMatrix x = characteristic_matrix(f.ring, f.n, f.rows);
        t = x.dimension == 0 ? Trellis::trivial(f.n, alpha)
                             : search_minimal_tailbiting(x, x.dimension, Order::Product).front().trellis;
        if (oracle) code = to_words(enumerate_code(f.ring, f.n, f.rows));
    }
    Word r = parse_received(received, alpha);
    if (r.size() != f.n)
        throw UsageError("received word has " + std::to_string(r.size()) + " symbols, the code has length " +
                         std::to_string(f.n));
    DecodeResult d = viterbi_decode(t, r);
    std::cout << "codeword " << format_word(d.word, alpha) << "\n";
    std::cout << "cost " << d.cost << "\n";
    if (oracle) {
        auto best = nearest_codeword(code, r, HammingMetric{});
        if (best.second != d.word || best.first != d.cost)
            throw InconsistencyError("exhaustive search found " + format_word(best.second, alpha) + " at cost " +
                                     std::to_string(best.first));
        std::cout << "oracle: agree\n";
    }
    return Ok;
}

int cmd_gen(const std::string& ring, const std::string& group, std::size_t n, std::size_t rows, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (!group.empty()) {
        CodeFile f = parse_code_file("group " + group + " " + std::to_string(n) + "\n");
        f.group_rows = random_group_code(f.group, n, rows, rng);
        std::cout << format_code_file(f);
        return Ok;
    }
    CodeFile f = parse_code_file("ring " + ring + " " + std::to_string(n) + "\n");
    std::cout << format_code_file(f.ring, n, random_code(f.ring, n, rows, rng));
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic generators and minimal tail-biting trellises for codes over Z_{p^a}"};
    app.require_subcommand(1);

    std::string file;
    auto* pb = app.add_subcommand("pbasis", "print the basis after Algorithm A, B or C");
    std::string stage = "C", coeffs = "full";
    pb->add_option("file", file, "code file")->required();
    pb->add_option("--stage", stage, "A (proper), B (biproper) or C (lexicographically first)")
        ->check(CLI::IsMember({"A", "B", "C"}));
    pb->add_option("--coefficients", coeffs, "reduction coefficients: full or plinear")
        ->check(CLI::IsMember({"full", "plinear"}));

    auto* cm = app.add_subcommand("charmat", "print the characteristic matrix");
    std::string method = "fast", format = "text";
    bool check = false;
    cm->add_option("file", file, "code file")->required();
    cm->add_option("--method", method, "naive (all shifts) or fast (incremental)")
        ->check(CLI::IsMember({"naive", "fast"}));
    cm->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cm->add_flag("--check", check, "run both methods and validate the result");
    cm->add_option("--coefficients", coeffs, "reduction coefficients: full or plinear")
        ->check(CLI::IsMember({"full", "plinear"}));

    auto* tr = app.add_subcommand("trellis", "build or search trellises");
    TrellisArgs ta;
    tr->add_option("file", ta.file, "code file")->required();
    tr->add_option("--spans", ta.spans, "'conventional' or 1-based generator indices, e.g. 1,2,3,6,9");
    tr->add_option("--search", ta.search, "minimal tail-biting search under an order")
        ->check(CLI::IsMember({"theta", "product", "max", "sum", "edge_product", "edge_max", "edge_sum"}));
    tr->add_option("--dot", ta.dot, "write Graphviz DOT to this path");
    tr->add_flag("--profile", ta.profile, "check the conventional profile against the state-space count");

    auto* dc = app.add_subcommand("decode", "Viterbi decoding on the minimal tail-biting trellis");
    std::string received, metric = "hamming";
    bool oracle = false;
    dc->add_option("file", file, "code file")->required();
    dc->add_option("--received", received, "received symbols, e.g. 1,6,3,1 or 1:3,0:2")->required();
    dc->add_option("--metric", metric, "symbol metric")->check(CLI::IsMember({"hamming"}));
    dc->add_flag("--oracle", oracle, "cross-check against exhaustive nearest-codeword search");

    auto* gn = app.add_subcommand("gen", "print a random code file");
    std::string ring = "2^2", group;
    std::size_t n = 4, rows = 2;
    std::uint64_t seed = 1;
    gn->add_option("--ring", ring, "ring p^alpha");
    gn->add_option("--group", group, "group orders n1,n2,...");
    gn->add_option("--n", n, "code length")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    gn->add_option("--rows", rows, "generator rows")->check(CLI::Range(std::size_t{1}, std::size_t{16}));
    gn->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : InputError;
    }

    try {
        if (*pb) return cmd_pbasis(file, stage, coeffs);
        if (*cm) return cmd_charmat(file, method, format, check, coeffs);
        if (*tr) return cmd_trellis(ta);
        if (*dc) return cmd_decode(file, received, metric, oracle);
        if (*gn) return cmd_gen(ring, group, n, rows, seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const InconsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return Infeasible;
    } catch (const GuardExceeded& e) {
        std::cerr << "infeasible: " << e.what() << " (raise TRELLIS_GUARD to allow)\n";
        return Infeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Ok;
}
