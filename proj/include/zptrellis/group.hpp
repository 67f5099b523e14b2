#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zptrellis/charmatrix.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/search.hpp"
#include "zptrellis/trellis.hpp"

namespace zpt {

/// G = C_{n_1} x ... x C_{n_t}.
struct AbelianGroupSpec {
    std::vector<std::uint32_t> cyclic_orders;

    AbelianGroupSpec() = default;
    explicit AbelianGroupSpec(std::vector<std::uint32_t> orders) : cyclic_orders(std::move(orders)) {
        if (cyclic_orders.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
        for (auto o : cyclic_orders)
            if (o < 2) throw std::invalid_argument("cyclic factor order must be at least 2");
    }

    std::uint64_t order() const {
        std::uint64_t r = 1;
        for (auto o : cyclic_orders) r *= o;
        return r;
    }
    Alphabet alphabet() const { return Alphabet(cyclic_orders); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(cyclic_orders[i]);
        }
        return s;
    }
    friend bool operator==(const AbelianGroupSpec&, const AbelianGroupSpec&) = default;
};

/// One residue per cyclic factor.
using GroupSymbol = std::vector<std::uint32_t>;

struct GroupCodeword {
    std::vector<GroupSymbol> symbols;
    friend bool operator==(const GroupCodeword&, const GroupCodeword&) = default;
    friend auto operator<=>(const GroupCodeword&, const GroupCodeword&) = default;
};

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint32_t v) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t d = 2; d * d <= v; ++d) {
        if (v % d) continue;
        std::uint32_t e = 0;
        while (v % d == 0) {
            v /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

/// The p-primary part H_p = C_{p^alpha_1} x ... x C_{p^alpha_m} of G, alpha ascending.
struct SylowComponent {
    std::uint32_t p = 2;
    std::vector<std::uint32_t> exponents;  ///< alpha_1 <= ... <= alpha_m
    std::vector<std::size_t> factor;       ///< cyclic factor of G each component comes from
    std::vector<std::vector<GroupSymbol>> rows;  ///< generator matrix projected onto H_p

    std::size_t m() const noexcept { return exponents.size(); }
    std::uint32_t top() const noexcept { return exponents.empty() ? 0 : exponents.back(); }
    Alphabet alphabet() const {
        std::vector<std::uint32_t> mod;
        for (auto e : exponents) mod.push_back(ipow(p, e));
        return Alphabet(mod);
    }
    static std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
        std::uint32_t r = 1;
        while (e--) r *= b;
        return r;
    }
};

/// Primes dividing |G| with the shape of each H_p (rows left empty).
inline std::vector<SylowComponent> sylow_shapes(const AbelianGroupSpec& g) {
    std::vector<std::uint32_t> primes;
    for (auto o : g.cyclic_orders)
        for (auto [p, e] : factorize(o)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<SylowComponent> out;
    for (auto p : primes) {
        SylowComponent c;
        c.p = p;
        std::vector<std::pair<std::uint32_t, std::size_t>> parts;
        for (std::size_t j = 0; j < g.cyclic_orders.size(); ++j) {
            std::uint32_t e = 0, o = g.cyclic_orders[j];
            while (o % p == 0) {
                o /= p;
                ++e;
            }
            if (e > 0) parts.emplace_back(e, j);
        }
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto [e, j] : parts) {
            c.exponents.push_back(e);
            c.factor.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// p-primary component of a G symbol: residue of each factor modulo its p-part.
inline GroupSymbol project_symbol(const SylowComponent& c, const GroupSymbol& s) {
    GroupSymbol h(c.m());
    for (std::size_t i = 0; i < c.m(); ++i) h[i] = s.at(c.factor[i]) % SylowComponent::ipow(c.p, c.exponents[i]);
    return h;
}

/// The element of G whose p-component is h and whose other primary components vanish.
inline GroupSymbol inject_symbol(const AbelianGroupSpec& g, const SylowComponent& c, const GroupSymbol& h) {
    GroupSymbol s(g.cyclic_orders.size(), 0);
    for (std::size_t i = 0; i < c.m(); ++i) {
        const std::uint64_t nj = g.cyclic_orders[c.factor[i]];
        const std::uint64_t q = SylowComponent::ipow(c.p, c.exponents[i]);
        const std::uint64_t rest = nj / q;
        // r = rest * t with rest * t == h (mod q)
        std::uint64_t t = 0;
        while ((rest * t) % q != h[i] % q) ++t;
        s[c.factor[i]] = static_cast<std::uint32_t>((rest * t) % nj);
    }
    return s;
}

inline std::vector<SylowComponent> sylow_decompose(const AbelianGroupSpec& g, const std::vector<GroupCodeword>& m) {
    auto comps = sylow_shapes(g);
    for (auto& c : comps)
        for (const auto& row : m) {
            std::vector<GroupSymbol> r;
            for (const auto& s : row.symbols) r.push_back(project_symbol(c, s));
            c.rows.push_back(std::move(r));
        }
    return comps;
}

/// Block over Z_{p^alpha_m}: h_i is multiplied by p^(alpha_m - alpha_i).
inline std::vector<Residue> embed_symbol(const SylowComponent& c, const GroupSymbol& h) {
    std::vector<Residue> b(c.m());
    const std::uint32_t top = c.top();
    for (std::size_t i = 0; i < c.m(); ++i) b[i] = h[i] * SylowComponent::ipow(c.p, top - c.exponents[i]);
    return b;
}

inline GroupSymbol unembed_symbol(const SylowComponent& c, const std::vector<Residue>& b) {
    GroupSymbol h(c.m());
    const std::uint32_t top = c.top();
    for (std::size_t i = 0; i < c.m(); ++i) {
        const std::uint32_t scale = SylowComponent::ipow(c.p, top - c.exponents[i]);
        if (b[i] % scale != 0) throw std::invalid_argument("unembed: block is outside the embedded image");
        h[i] = b[i] / scale;
    }
    return h;
}

/// Linear code of length m*n over Z_{p^alpha_m} equivalent to a p-group code.
struct EmbeddedCode {
    RingSpec spec;
    std::size_t m = 1;
    std::size_t n = 0;  ///< group code length
    std::vector<Codeword> rows;
};

inline EmbeddedCode embed_p_group_code(const SylowComponent& c, std::size_t n) {
    EmbeddedCode e;
    e.spec = RingSpec(c.p, c.top());
    e.m = c.m();
    e.n = n;
    for (const auto& row : c.rows) {
        std::vector<Residue> s;
        for (const auto& h : row) {
            auto b = embed_symbol(c, h);
            s.insert(s.end(), b.begin(), b.end());
        }
        e.rows.emplace_back(e.spec, std::move(s));
    }
    return e;
}

/// Symbol index over G of a residue tuple.
inline Symbol encode_group_symbol(const AbelianGroupSpec& g, const GroupSymbol& s) { return g.alphabet().encode(s); }

/// All elements of the subgroup of G^n generated by the rows (guarded).
inline WordSet enumerate_group_code(const AbelianGroupSpec& g, std::size_t n, const std::vector<GroupCodeword>& m) {
    const Alphabet a = g.alphabet();
    std::vector<Word> gens;
    for (const auto& row : m) {
        Word w;
        for (const auto& s : row.symbols) w.push_back(a.encode(s));
        gens.push_back(std::move(w));
    }
    WordSet out{Word(n, 0)};
    std::vector<Word> frontier{Word(n, 0)};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (const auto& gw : gens) {
                Word y(n);
                for (std::size_t i = 0; i < n; ++i) y[i] = a.add(w[i], gw[i]);
                if (out.insert(y).second) {
                    check_guard(out.size(), "group code enumeration");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    return out;
}

/// Random generator rows over G, each symbol uniform.
template <class Rng>
std::vector<GroupCodeword> random_group_code(const AbelianGroupSpec& g, std::size_t n, std::size_t rows, Rng& rng) {
    std::vector<GroupCodeword> m(rows);
    for (auto& r : m)
        for (std::size_t i = 0; i < n; ++i) {
            GroupSymbol s;
            for (auto o : g.cyclic_orders) s.push_back(static_cast<std::uint32_t>(rng() % o));
            r.symbols.push_back(std::move(s));
        }
    return m;
}

/// Trellis for the p-component of the code, labels already mapped into G.
inline Trellis sylow_component_trellis(const AbelianGroupSpec& g, const SylowComponent& c, std::size_t n,
                                       Order order) {
    const Alphabet ga = g.alphabet();
    EmbeddedCode e = embed_p_group_code(c, n);
    const std::size_t len = e.m * n;
    Punctured pc = puncture(e.spec, len, e.rows);
    if (pc.kept.empty()) return Trellis::trivial(n, ga);
    CharMatrix x = algorithm_I(e.spec, pc.kept.size(), pc.rows);
    auto results = search_minimal_tailbiting(x, x.dimension, order);
    Trellis t = unpuncture(results.front().trellis, pc.kept, len);
    Trellis s = sectionalize(t, e.m);
    const Alphabet block = s.alphabet();
    return relabel(s, ga, [&](Symbol sym) {
        auto digits = block.decode(sym);
        std::vector<Residue> b(digits.begin(), digits.end());
        return ga.encode(inject_symbol(g, c, unembed_symbol(c, b)));
    });
}

/// Product over the primes dividing |G| of the sectionalized per-prime minimal trellises.
inline Trellis group_minimal_tailbiting(const AbelianGroupSpec& g, std::size_t n, const std::vector<GroupCodeword>& m,
                                        Order order = Order::Product) {
    for (const auto& row : m) {
        if (row.symbols.size() != n) throw std::invalid_argument("group codeword length differs from n");
        for (const auto& s : row.symbols) {
            if (s.size() != g.cyclic_orders.size()) throw std::invalid_argument("group symbol has wrong arity");
            for (std::size_t j = 0; j < s.size(); ++j)
                if (s[j] >= g.cyclic_orders[j]) throw std::invalid_argument("group symbol component out of range");
        }
    }
    Trellis t = Trellis::trivial(n, g.alphabet());
    for (const auto& c : sylow_decompose(g, m)) t = product(t, sylow_component_trellis(g, c, n, order));
    return reduce(t);
}

} // namespace zpt
