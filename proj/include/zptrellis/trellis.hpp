#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zptrellis/codeword.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/pbasis.hpp"

namespace zpt {

using Symbol = std::uint64_t;
using Word = std::vector<Symbol>;
using WordSet = std::set<Word>;

/// Product of cyclic groups Z_{m_0} x ... x Z_{m_{r-1}}. A symbol is the mixed-radix
/// index of its digit tuple, first digit least significant.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
        size_ = 1;
        for (auto m : moduli_) {
            if (m < 1) throw std::invalid_argument("alphabet modulus must be positive");
            if (size_ > (Symbol{1} << 40) / m) throw std::invalid_argument("alphabet too large");
            size_ *= m;
        }
    }
    static Alphabet ring(const RingSpec& spec) { return Alphabet({spec.modulus()}); }

    const std::vector<std::uint32_t>& moduli() const noexcept { return moduli_; }
    Symbol size() const noexcept { return size_; }

    std::vector<std::uint32_t> decode(Symbol s) const {
        std::vector<std::uint32_t> d(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            d[i] = static_cast<std::uint32_t>(s % moduli_[i]);
            s /= moduli_[i];
        }
        return d;
    }
    Symbol encode(const std::vector<std::uint32_t>& digits) const {
        if (digits.size() != moduli_.size()) throw std::invalid_argument("symbol digit count mismatch");
        Symbol s = 0;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            if (digits[i] >= moduli_[i]) throw std::invalid_argument("symbol digit out of range");
            s = s * moduli_[i] + digits[i];
        }
        return s;
    }
    Symbol add(Symbol a, Symbol b) const {
        if (moduli_.size() == 1) return (a + b) % moduli_[0];
        auto da = decode(a), db = decode(b);
        for (std::size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % moduli_[i];
        return encode(da);
    }

    /// m copies of this alphabet side by side.
    Alphabet power(std::size_t m) const {
        std::vector<std::uint32_t> mod;
        for (std::size_t k = 0; k < m; ++k) mod.insert(mod.end(), moduli_.begin(), moduli_.end());
        return Alphabet(std::move(mod));
    }

    std::string format(Symbol s) const {
        if (moduli_.size() == 1) return std::to_string(s);
        auto d = decode(s);
        std::string out;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) out += ":";
            out += std::to_string(d[i]);
        }
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept { return a.moduli_ == b.moduli_; }

private:
    std::vector<std::uint32_t> moduli_{2};
    Symbol size_ = 2;
};

struct Edge {
    std::uint32_t from = 0;
    Symbol label = 0;
    std::uint32_t to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex label: one Z_p digit per elementary factor.
using VertexLabel = std::vector<std::uint32_t>;

/// Time-indexed vertex classes and labeled edge classes. Edge class E_i joins V_i to V_{i+1};
/// a conventional trellis has classes V_0..V_n with |V_0| = |V_n| = 1, a tail-biting one
/// has V_0..V_{n-1} and E_{n-1} ends in V_0.
class Trellis {
public:
    Trellis() = default;
    Trellis(std::size_t n, bool tail_biting, Alphabet alphabet, std::vector<std::vector<VertexLabel>> vertices,
            std::vector<std::vector<Edge>> edges)
        : n_(n), tail_biting_(tail_biting), alphabet_(std::move(alphabet)), vertices_(std::move(vertices)),
          edges_(std::move(edges)) {
        if (n_ == 0) throw std::invalid_argument("trellis length must be positive");
        if (vertices_.size() != (tail_biting_ ? n_ : n_ + 1)) throw std::invalid_argument("wrong number of vertex classes");
        if (edges_.size() != n_) throw std::invalid_argument("wrong number of edge classes");
        if (!tail_biting_ && (vertices_.front().size() != 1 || vertices_.back().size() != 1))
            throw std::invalid_argument("conventional trellis needs single root and goal vertices");
        for (std::size_t i = 0; i < n_; ++i) {
            auto& e = edges_[i];
            for (const auto& ed : e) {
                if (ed.from >= vertices_[i].size() || ed.to >= vertices_[next(i)].size())
                    throw std::invalid_argument("edge endpoint out of range at time " + std::to_string(i));
                if (ed.label >= alphabet_.size()) throw std::invalid_argument("edge label outside the alphabet");
            }
            std::sort(e.begin(), e.end());
            e.erase(std::unique(e.begin(), e.end()), e.end());
        }
    }

    /// Single-vertex trellis representing the zero word.
    static Trellis trivial(std::size_t n, const Alphabet& alphabet, bool tail_biting = false) {
        std::vector<std::vector<VertexLabel>> v(tail_biting ? n : n + 1, std::vector<VertexLabel>{VertexLabel{}});
        std::vector<std::vector<Edge>> e(n, std::vector<Edge>{Edge{0, 0, 0}});
        return Trellis(n, tail_biting, alphabet, std::move(v), std::move(e));
    }

    std::size_t length() const noexcept { return n_; }
    bool tail_biting() const noexcept { return tail_biting_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_vertex_classes() const noexcept { return vertices_.size(); }
    const std::vector<VertexLabel>& vertices(std::size_t i) const { return vertices_.at(i); }
    const std::vector<Edge>& edges(std::size_t i) const { return edges_.at(i); }
    const std::vector<std::vector<VertexLabel>>& vertex_classes() const noexcept { return vertices_; }
    const std::vector<std::vector<Edge>>& edge_classes() const noexcept { return edges_; }

    /// Index of the vertex class an edge of E_i ends in.
    std::size_t next(std::size_t i) const noexcept { return tail_biting_ ? (i + 1) % n_ : i + 1; }

private:
    std::size_t n_ = 1;
    bool tail_biting_ = false;
    Alphabet alphabet_;
    std::vector<std::vector<VertexLabel>> vertices_{{VertexLabel{}}, {VertexLabel{}}};
    std::vector<std::vector<Edge>> edges_{{Edge{}}};
};

struct Profile {
    std::vector<std::uint64_t> vertices;  ///< |V_0|..|V_{n-1}| (and |V_n| for conventional)
    std::vector<std::uint64_t> edges;     ///< |E_0|..|E_{n-1}|

    friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profile(const Trellis& t) {
    Profile p;
    for (const auto& v : t.vertex_classes()) p.vertices.push_back(v.size());
    for (const auto& e : t.edge_classes()) p.edges.push_back(e.size());
    return p;
}

inline std::string format_profile(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline Word to_word(const Codeword& c) { return Word(c.symbols().begin(), c.symbols().end()); }

inline Codeword to_codeword(const RingSpec& spec, const Word& w) {
    std::vector<Residue> s;
    for (auto v : w) s.push_back(static_cast<Residue>(v));
    return Codeword(spec, std::move(s));
}

inline WordSet to_words(const CodeSet& c) {
    WordSet out;
    for (const auto& x : c) out.insert(to_word(x));
    return out;
}

/// Minimal trellis of the p multiples of x on the given span: p vertices at the times of
/// the semiopen span, one vertex elsewhere. Wrapping and full spans give tail-biting trellises.
inline Trellis elementary_trellis(const Codeword& x, const CyclicSpan& span) {
    const std::size_t n = x.size();
    if (span.n() != n) throw std::invalid_argument("span axis differs from codeword length");
    if (!span_covers(span, x)) throw std::invalid_argument("span " + span.to_string() + " does not cover " + x.to_string());
    const RingSpec& spec = x.spec();
    const std::uint32_t p = spec.p();
    const bool tb = span.wraps() || span.is_full();
    const std::size_t classes = tb ? n : n + 1;
    auto wide = [&](std::size_t t) { return t < n && span.contains_time(t); };

    std::vector<std::vector<VertexLabel>> v(classes);
    for (std::size_t t = 0; t < classes; ++t) {
        if (wide(t))
            for (std::uint32_t c = 0; c < p; ++c) v[t].push_back(VertexLabel{c});
        else
            v[t].push_back(VertexLabel{0});
    }
    std::vector<std::vector<Edge>> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = tb ? (i + 1) % n : i + 1;
        const bool wi = wide(i), wj = wide(j);
        auto label = [&](std::uint32_t c) { return Symbol{spec.mul(c, x[i])}; };
        if (wi && wj) {
            for (std::uint32_t c = 0; c < p; ++c) e[i].push_back({c, label(c), c});
        } else if (!wi && wj) {
            for (std::uint32_t c = 0; c < p; ++c) e[i].push_back({0, label(c), c});
        } else if (wi && !wj) {
            for (std::uint32_t c = 0; c < p; ++c) e[i].push_back({c, label(c), 0});
        } else if (span.is_interval() && span.a() == span.b() && i == span.a()) {
            for (std::uint32_t c = 0; c < p; ++c) e[i].push_back({0, label(c), 0});
        } else {
            e[i].push_back({0, 0, 0});
        }
    }
    return Trellis(n, tb, Alphabet::ring(spec), std::move(v), std::move(e));
}

/// The same trellis read on a circular time axis (V_n merged into V_0).
inline Trellis as_tail_biting(const Trellis& t) {
    if (t.tail_biting()) return t;
    const std::size_t n = t.length();
    std::vector<std::vector<VertexLabel>> v(t.vertex_classes().begin(), t.vertex_classes().begin() + n);
    return Trellis(n, true, t.alphabet(), std::move(v), t.edge_classes());
}

/// Cartesian product of vertex classes with label-sum edges.
inline Trellis product(const Trellis& t1, const Trellis& t2) {
    if (t1.length() != t2.length()) throw std::invalid_argument("product: trellis lengths differ");
    if (!(t1.alphabet() == t2.alphabet())) throw std::invalid_argument("product: alphabets differ");
    if (t1.tail_biting() != t2.tail_biting()) return product(as_tail_biting(t1), as_tail_biting(t2));
    const std::size_t n = t1.length();
    const Alphabet& a = t1.alphabet();
    std::vector<std::vector<VertexLabel>> v(t1.num_vertex_classes());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& l1 : t1.vertices(i))
            for (const auto& l2 : t2.vertices(i)) {
                VertexLabel l = l1;
                l.insert(l.end(), l2.begin(), l2.end());
                v[i].push_back(std::move(l));
            }
    std::vector<std::vector<Edge>> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t w_from = static_cast<std::uint32_t>(t2.vertices(i).size());
        const std::uint32_t w_to = static_cast<std::uint32_t>(t2.vertices(t2.next(i)).size());
        e[i].reserve(t1.edges(i).size() * t2.edges(i).size());
        for (const auto& e1 : t1.edges(i))
            for (const auto& e2 : t2.edges(i))
                e[i].push_back({e1.from * w_from + e2.from, a.add(e1.label, e2.label), e1.to * w_to + e2.to});
    }
    return Trellis(n, t1.tail_biting(), a, std::move(v), std::move(e));
}

/// Label sequences of all complete paths (conventional) or closed cycles through V_0 (tail-biting).
inline WordSet represented_code(const Trellis& t) {
    const std::size_t n = t.length();
    const std::uint64_t cap = enumeration_cap();
    std::uint64_t count = 0;
    WordSet out;
    // adjacency per time
    std::vector<std::vector<std::vector<const Edge*>>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        adj[i].resize(t.vertices(i).size());
        for (const auto& e : t.edges(i)) adj[i][e.from].push_back(&e);
    }
    Word w(n);
    std::function<void(std::size_t, std::uint32_t, std::uint32_t)> walk = [&](std::size_t i, std::uint32_t v,
                                                                            std::uint32_t start) {
        if (i == n) {
            if (!t.tail_biting() || v == start) {
                if (++count > cap) throw GuardExceeded("represented_code: path count exceeds enumeration cap");
                out.insert(w);
            }
            return;
        }
        for (const Edge* e : adj[i][v]) {
            w[i] = e->label;
            walk(i + 1, e->to, start);
        }
    };
    for (std::uint32_t s = 0; s < t.vertices(0).size(); ++s) walk(0, s, s);
    return out;
}

/// Number of complete paths / closed cycles, counted without enumerating them.
inline boost::multiprecision::cpp_int path_count(const Trellis& t) {
    using boost::multiprecision::cpp_int;
    const std::size_t n = t.length();
    cpp_int total = 0;
    const std::size_t starts = t.vertices(0).size();
    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<cpp_int> cur(starts, 0);
        cur[s] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<cpp_int> nxt(t.vertices(t.next(i)).size(), 0);
            for (const auto& e : t.edges(i)) nxt[e.to] += cur[e.from];
            cur = std::move(nxt);
        }
        total += t.tail_biting() ? cur[s] : cur[0];
    }
    return total;
}

/// Drop vertices and edges that lie on no complete path (conventional) or cycle (tail-biting).
inline Trellis reduce(const Trellis& t) {
    const std::size_t n = t.length();
    const std::size_t classes = t.num_vertex_classes();
    std::vector<std::vector<char>> v_alive(classes);
    std::vector<std::vector<char>> e_alive(n);
    for (std::size_t i = 0; i < classes; ++i) v_alive[i].assign(t.vertices(i).size(), 0);
    for (std::size_t i = 0; i < n; ++i) e_alive[i].assign(t.edges(i).size(), 0);

    const std::size_t starts = t.tail_biting() ? t.vertices(0).size() : 1;
    for (std::size_t s = 0; s < starts; ++s) {
        // fwd[i]: reachable from s at time i (i = 0..n, time n is V_0 again for tail-biting)
        std::vector<std::vector<char>> fwd(n + 1), bwd(n + 1);
        auto size_at = [&](std::size_t i) { return t.vertices(i == n ? (t.tail_biting() ? 0 : n) : i).size(); };
        for (std::size_t i = 0; i <= n; ++i) {
            fwd[i].assign(size_at(i), 0);
            bwd[i].assign(size_at(i), 0);
        }
        fwd[0][s] = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& e : t.edges(i))
                if (fwd[i][e.from]) fwd[i + 1][e.to] = 1;
        bwd[n][t.tail_biting() ? s : 0] = 1;
        for (std::size_t i = n; i-- > 0;)
            for (const auto& e : t.edges(i))
                if (bwd[i + 1][e.to]) bwd[i][e.from] = 1;
        for (std::size_t i = 0; i < classes; ++i)
            for (std::size_t v = 0; v < v_alive[i].size(); ++v)
                if (fwd[i][v] && bwd[i][v]) v_alive[i][v] = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < t.edges(i).size(); ++k) {
                const auto& e = t.edges(i)[k];
                if (fwd[i][e.from] && bwd[i + 1][e.to]) e_alive[i][k] = 1;
            }
    }
    std::vector<std::vector<std::uint32_t>> remap(classes);
    std::vector<std::vector<VertexLabel>> v(classes);
    for (std::size_t i = 0; i < classes; ++i) {
        remap[i].assign(t.vertices(i).size(), 0);
        for (std::size_t k = 0; k < t.vertices(i).size(); ++k)
            if (v_alive[i][k]) {
                remap[i][k] = static_cast<std::uint32_t>(v[i].size());
                v[i].push_back(t.vertices(i)[k]);
            }
    }
    bool empty = false;
    for (const auto& cls : v) empty = empty || cls.empty();
    if (empty) throw InconsistencyError("reduce: trellis represents no word");
    std::vector<std::vector<Edge>> e(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < t.edges(i).size(); ++k)
            if (e_alive[i][k]) {
                const auto& ed = t.edges(i)[k];
                e[i].push_back({remap[i][ed.from], ed.label, remap[t.next(i)][ed.to]});
            }
    return Trellis(n, t.tail_biting(), t.alphabet(), std::move(v), std::move(e));
}

inline bool is_reduced(const Trellis& t) { return profile(reduce(t)) == profile(t); }

enum class Order { Theta, Product, Max, Sum, EdgeProduct, EdgeMax, EdgeSum };
enum class Comparison { Less, Equal, Greater, Incomparable };

inline const char* order_name(Order o) {
    switch (o) {
    case Order::Theta: return "theta";
    case Order::Product: return "product";
    case Order::Max: return "max";
    case Order::Sum: return "sum";
    case Order::EdgeProduct: return "edge_product";
    case Order::EdgeMax: return "edge_max";
    default: return "edge_sum";
    }
}

inline Order parse_order(const std::string& s) {
    for (Order o : {Order::Theta, Order::Product, Order::Max, Order::Sum, Order::EdgeProduct, Order::EdgeMax,
                    Order::EdgeSum})
        if (s == order_name(o)) return o;
    throw std::invalid_argument("unknown order '" + s + "'");
}

namespace detail {
template <class T>
Comparison cmp(const T& a, const T& b) {
    if (a < b) return Comparison::Less;
    if (b < a) return Comparison::Greater;
    return Comparison::Equal;
}

/// The value a total order assigns to a profile. Only times 0..n-1 count.
inline boost::multiprecision::cpp_int order_value(const Profile& p, std::size_t n, Order o) {
    using boost::multiprecision::cpp_int;
    const bool edges = o == Order::EdgeProduct || o == Order::EdgeMax || o == Order::EdgeSum;
    const auto& v = edges ? p.edges : p.vertices;
    cpp_int acc = (o == Order::Product || o == Order::EdgeProduct) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        switch (o) {
        case Order::Product:
        case Order::EdgeProduct: acc *= v[i]; break;
        case Order::Max:
        case Order::EdgeMax: acc = std::max(acc, cpp_int(v[i])); break;
        default: acc += v[i]; break;
        }
    }
    return acc;
}
} // namespace detail

/// Compare two profiles of length-n trellises.
inline Comparison compare(const Profile& a, const Profile& b, std::size_t n, Order o) {
    if (a.vertices.size() < n || b.vertices.size() < n || a.edges.size() < n || b.edges.size() < n)
        throw std::invalid_argument("compare: profiles shorter than n");
    if (o == Order::Theta) {
        bool le = true, ge = true;
        for (std::size_t i = 0; i < n; ++i) {
            le = le && a.vertices[i] <= b.vertices[i];
            ge = ge && a.vertices[i] >= b.vertices[i];
        }
        if (le && ge) return Comparison::Equal;
        if (le) return Comparison::Less;
        if (ge) return Comparison::Greater;
        return Comparison::Incomparable;
    }
    return detail::cmp(detail::order_value(a, n, o), detail::order_value(b, n, o));
}

inline Comparison compare(const Trellis& t1, const Trellis& t2, Order o) {
    if (t1.length() != t2.length()) throw std::invalid_argument("compare: trellis lengths differ");
    return compare(profile(t1), profile(t2), t1.length(), o);
}

/// Reduced product of the elementary trellises of the given generators.
inline Trellis build_from_generators(const RingSpec& spec, std::size_t n,
                                     const std::vector<std::pair<Codeword, CyclicSpan>>& gens) {
    Trellis t = Trellis::trivial(n, Alphabet::ring(spec));
    for (const auto& [x, s] : gens) {
        require_same_ring(spec, x.spec());
        if (x.size() != n) throw std::invalid_argument("generator length differs from n");
        t = product(t, elementary_trellis(x, s));
    }
    return reduce(t);
}

/// Conventional spans for every row.
inline std::vector<std::pair<Codeword, CyclicSpan>> with_conventional_spans(const std::vector<Codeword>& rows) {
    std::vector<std::pair<Codeword, CyclicSpan>> out;
    for (const auto& r : rows) out.emplace_back(r, char_triple(r).span);
    return out;
}

/// Vertex and edge counts of the minimal conventional trellis: |C| / (|P_i| |F_i|) with P_i the
/// words supported on [0,i) and F_i those supported on [i,n).
inline Profile minimal_conventional_profile(const CodeSet& c, std::size_t n) {
    std::vector<std::uint64_t> past(n + 1, 0), future(n + 1, 0);
    for (const auto& x : c) {
        auto f = x.first_nonzero();
        auto l = x.last_nonzero();
        // x is in P_i for i > last, in F_i for i <= first
        for (std::size_t i = 0; i <= n; ++i) {
            if (!l || *l < i) ++past[i];
            if (!f || *f >= i) ++future[i];
        }
    }
    Profile p;
    const std::uint64_t size = c.size();
    for (std::size_t i = 0; i <= n; ++i) p.vertices.push_back(size / (past[i] * future[i]));
    for (std::size_t i = 0; i < n; ++i) p.edges.push_back(size / (past[i] * future[i + 1]));
    return p;
}

/// Re-insert identically-zero positions: kept[i] is the original position of section i.
inline Trellis unpuncture(const Trellis& t, const std::vector<std::size_t>& kept, std::size_t original_n) {
    if (kept.size() != t.length()) throw std::invalid_argument("unpuncture: column map does not match trellis");
    if (kept.size() == original_n) return t;
    const std::size_t np = t.length();
    auto punctured_time = [&](std::size_t q) {  // number of kept positions before q
        std::size_t c = 0;
        while (c < np && kept[c] < q) ++c;
        return c;
    };
    auto class_at = [&](std::size_t i) -> std::size_t { return (t.tail_biting() && i == np) ? 0 : i; };
    const std::size_t classes = t.tail_biting() ? original_n : original_n + 1;
    std::vector<std::vector<VertexLabel>> v(classes);
    for (std::size_t q = 0; q < classes; ++q) v[q] = t.vertices(class_at(punctured_time(q)));
    std::vector<std::vector<Edge>> e(original_n);
    for (std::size_t q = 0; q < original_n; ++q) {
        std::size_t i = punctured_time(q);
        if (i < np && kept[i] == q) {
            e[q] = t.edges(i);
        } else {
            for (std::uint32_t k = 0; k < v[q].size(); ++k) e[q].push_back({k, 0, k});
        }
    }
    return Trellis(original_n, t.tail_biting(), t.alphabet(), std::move(v), std::move(e));
}

/// Keep vertex classes at times 0, m, 2m, ...; each new edge is a path of m old edges with
/// the m-tuple of labels as its symbol.
inline Trellis sectionalize(const Trellis& t, std::size_t m) {
    const std::size_t n = t.length();
    if (m == 0 || n % m != 0) throw std::invalid_argument("sectionalize: section size must divide the length");
    if (m == 1) return t;
    const std::size_t ns = n / m;
    const Alphabet a = t.alphabet().power(m);
    std::vector<std::vector<VertexLabel>> v;
    for (std::size_t q = 0; q < (t.tail_biting() ? ns : ns + 1); ++q) v.push_back(t.vertices(q * m));
    std::vector<std::vector<Edge>> e(ns);
    std::vector<std::vector<std::vector<const Edge*>>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        adj[i].resize(t.vertices(i).size());
        for (const auto& ed : t.edges(i)) adj[i][ed.from].push_back(&ed);
    }
    for (std::size_t q = 0; q < ns; ++q) {
        std::vector<std::uint32_t> digits;
        std::function<void(std::size_t, std::uint32_t, std::uint32_t)> walk = [&](std::size_t step, std::uint32_t from,
                                                                               std::uint32_t at) {
            if (step == m) {
                e[q].push_back({from, a.encode(digits), at});
                return;
            }
            for (const Edge* ed : adj[q * m + step][at]) {
                auto d = t.alphabet().decode(ed->label);
                digits.insert(digits.end(), d.begin(), d.end());
                walk(step + 1, from, ed->to);
                digits.resize(digits.size() - d.size());
            }
        };
        for (std::uint32_t s = 0; s < t.vertices(q * m).size(); ++s) walk(0, s, s);
    }
    return Trellis(ns, t.tail_biting(), a, std::move(v), std::move(e));
}

/// Same graph with every label mapped into another alphabet.
inline Trellis relabel(const Trellis& t, const Alphabet& to, const std::function<Symbol(Symbol)>& f) {
    std::vector<std::vector<Edge>> e = t.edge_classes();
    for (auto& cls : e)
        for (auto& ed : cls) ed.label = f(ed.label);
    return Trellis(t.length(), t.tail_biting(), to, t.vertex_classes(), std::move(e));
}

/// DOT rendering, one rank per vertex class.
inline std::string to_dot(const Trellis& t) {
    std::ostringstream os;
    os << "digraph trellis {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n";
    for (std::size_t i = 0; i < t.num_vertex_classes(); ++i) {
        os << "  { rank=same;";
        for (std::size_t k = 0; k < t.vertices(i).size(); ++k) {
            std::string label;
            for (auto d : t.vertices(i)[k]) label += std::to_string(d);
            if (label.empty()) label = "0";
            os << " \"v" << i << "_" << k << "\" [label=\"" << label << "\"];";
        }
        os << " }\n";
    }
    for (std::size_t i = 0; i < t.length(); ++i)
        for (const auto& e : t.edges(i))
            os << "  \"v" << i << "_" << e.from << "\" -> \"v" << t.next(i) << "_" << e.to << "\" [label=\""
               << t.alphabet().format(e.label) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace zpt
