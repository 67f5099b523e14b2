#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zptrellis/codeword.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/pbasis.hpp"

namespace zpt {

/// Characteristic generator: a codeword with a (possibly wrapping) span and its boundary orders.
struct CharGenerator {
    Codeword codeword;
    CyclicSpan span;
    std::uint32_t o1_exp = 0;
    std::uint32_t o2_exp = 0;

    CharTriple triple() const { return CharTriple{span, o1_exp, o2_exp}; }

    friend bool operator==(const CharGenerator&, const CharGenerator&) = default;
    friend auto operator<=>(const CharGenerator& a, const CharGenerator& b) {
        if (auto c = a.codeword <=> b.codeword; c != 0) return c;
        if (auto c = a.span <=> b.span; c != 0) return c;
        if (auto c = a.o1_exp <=> b.o1_exp; c != 0) return c;
        return a.o2_exp <=> b.o2_exp;
    }
};

struct CharMatrix {
    RingSpec spec;
    std::size_t n = 0;
    std::size_t dimension = 0;  ///< p-dimension k of the code
    std::vector<CharGenerator> rows;
    std::vector<std::uint32_t> column_exps;

    std::vector<Codeword> codewords() const {
        std::vector<Codeword> out;
        for (const auto& g : rows) out.push_back(g.codeword);
        return out;
    }
};

/// k_i: the largest order exponent in column i.
inline std::vector<std::uint32_t> column_order_exps(const RingSpec& spec, std::size_t n,
                                                    const std::vector<Codeword>& rows) {
    std::vector<std::uint32_t> k(n, 0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < n; ++i) k[i] = std::max(k[i], spec.order_exp(r[i]));
    return k;
}

inline std::vector<std::uint32_t> column_order_exps(const PBasis& b) { return column_order_exps(b.spec, b.n, b.rows); }

/// Positions with a nonzero column.
inline std::vector<std::size_t> support(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& rows) {
    std::vector<std::size_t> out;
    auto k = column_order_exps(spec, n, rows);
    for (std::size_t i = 0; i < n; ++i)
        if (k[i] > 0) out.push_back(i);
    return out;
}

inline std::vector<std::size_t> support(const PBasis& b) { return support(b.spec, b.n, b.rows); }

/// A code with its zero columns removed; kept[i] is the original position of column i.
struct Punctured {
    std::size_t original_n = 0;
    std::vector<std::size_t> kept;
    std::vector<Codeword> rows;

    bool trivial() const noexcept { return kept.size() == original_n; }
};

inline Punctured puncture(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& rows) {
    Punctured out;
    out.original_n = n;
    out.kept = support(spec, n, rows);
    for (const auto& r : rows) {
        std::vector<Residue> s;
        for (std::size_t i : out.kept) s.push_back(r[i]);
        out.rows.emplace_back(spec, std::move(s));
    }
    return out;
}

/// Re-insert zero columns into a punctured codeword.
inline Codeword unpuncture(const Punctured& p, const Codeword& x) {
    Codeword out(x.spec(), p.original_n);
    for (std::size_t i = 0; i < p.kept.size(); ++i) out.set(p.kept[i], x[i]);
    return out;
}

inline CyclicSpan unpuncture(const Punctured& p, const CyclicSpan& s) {
    if (s.is_full()) return CyclicSpan::full(p.original_n);
    if (s.is_empty()) return CyclicSpan::empty(p.original_n);
    return CyclicSpan::interval(p.kept[s.a()], p.kept[s.b()], p.original_n);
}

/// rho_j on a quadruple: codeword shifted right by j, endpoints advanced by j, orders carried unchanged.
inline CharGenerator shift_quadruple(const CharGenerator& g, std::size_t j) {
    return CharGenerator{shift_right(g.codeword, j), g.span.advanced(j), g.o1_exp, g.o2_exp};
}

/// Quadruple of a row y of the basis of sigma_j(C), moved back into C's coordinates.
inline CharGenerator harvest(const Codeword& y, std::size_t j) {
    auto t = char_triple(y);
    CharGenerator g{y, t.span, t.o1_exp, t.o2_exp};
    return shift_quadruple(g, j);
}

/// How a new quadruple is tested against the ones already collected.
enum class Membership {
    Quadruple,  ///< codeword, span and orders all equal
    Triple,     ///< span and orders only
};

struct CharMatrixOptions {
    ReductionOptions reduction{};
    Membership membership = Membership::Quadruple;
};

namespace detail {

inline bool already_present(const std::vector<CharGenerator>& rows, const CharGenerator& g, Membership m) {
    for (const auto& r : rows) {
        if (m == Membership::Quadruple ? r == g : r.triple() == g.triple()) return true;
    }
    return false;
}

inline void require_punctured(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& rows) {
    auto k = column_order_exps(spec, n, rows);
    for (std::size_t i = 0; i < n; ++i)
        if (k[i] == 0) throw std::invalid_argument("characteristic matrix: column " + std::to_string(i) +
                                                   " is identically zero; puncture first");
}

inline std::vector<Codeword> shifted_rows(const std::vector<Codeword>& m, std::size_t j) {
    std::vector<Codeword> out;
    for (const auto& r : m) out.push_back(shift_left(r, j));
    return out;
}

inline std::size_t total_exps(const std::vector<std::uint32_t>& k) {
    return std::accumulate(k.begin(), k.end(), std::size_t{0});
}

} // namespace detail

/// Union over all n cyclic shifts of the rotated lexicographically first biproper bases.
inline CharMatrix naive_char_matrix(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m,
                                    const CharMatrixOptions& opts = {}) {
    detail::require_punctured(spec, n, m);
    CharMatrix out;
    out.spec = spec;
    out.n = n;
    out.column_exps = column_order_exps(spec, n, m);
    for (std::size_t j = 0; j < n; ++j) {
        PBasis y = lex_first_biproper_basis(spec, n, detail::shifted_rows(m, j), opts.reduction);
        if (j == 0) out.dimension = y.rows.size();
        for (const auto& row : y.rows) {
            CharGenerator g = harvest(row, j);
            if (!detail::already_present(out.rows, g, opts.membership)) out.rows.push_back(std::move(g));
        }
    }
    return out;
}

/// Outcome of the incremental method together with its intermediate bases.
struct AlgorithmITrace {
    CharMatrix matrix;
    std::size_t iterations = 0;            ///< shifts processed after the first basis
    std::vector<std::vector<Codeword>> bases;  ///< the basis of sigma_j(C) for j = 0..iterations
};

/// Incremental characteristic matrix: shift the current basis one step at a time and
/// repair only the rows that wrapped around.
inline AlgorithmITrace algorithm_I_traced(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m,
                                          const CharMatrixOptions& opts = {}) {
    detail::require_punctured(spec, n, m);
    AlgorithmITrace tr;
    CharMatrix& out = tr.matrix;
    out.spec = spec;
    out.n = n;
    out.column_exps = column_order_exps(spec, n, m);
    const std::size_t total = detail::total_exps(out.column_exps);

    std::vector<Codeword> xs = lex_first_biproper_basis(spec, n, m, opts.reduction).rows;
    out.dimension = xs.size();
    tr.bases.push_back(xs);
    for (const auto& row : xs) {
        CharGenerator g = harvest(row, 0);
        if (!detail::already_present(out.rows, g, opts.membership)) out.rows.push_back(std::move(g));
    }

    std::size_t j = 0;
    while (out.rows.size() < total) {
        if (j >= n) throw InconsistencyError("algorithm_I: no fixed point after n shifts");
        std::vector<std::size_t> t_rows;
        std::vector<bool> in_t(xs.size(), false);
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (*xs[i].first_nonzero() == 0) {
                t_rows.push_back(i);
                in_t[i] = true;
            }
        if (t_rows.size() != out.column_exps[j])
            throw InconsistencyError("algorithm_I: " + std::to_string(t_rows.size()) +
                                     " rows start at the shift origin, expected " +
                                     std::to_string(out.column_exps[j]));
        for (auto& x : xs) x = shift_left(x, 1);

        // Restore properness of the wrapped rows.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t t : t_rows) {
                for (;;) {
                    const CharTriple tt = char_triple(xs[t]);
                    bool done = true;
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        if (i == t) continue;
                        const CharTriple ti = char_triple(xs[i]);
                        if (in_t[i] && !(ti.o2_exp < tt.o2_exp)) continue;
                        if (ti.start() == tt.start() && ti.o1_exp == tt.o1_exp) {
                            const std::size_t s0 = tt.start();
                            xs[t] = xs[t].plus_scaled(xs[i], cancel_coefficient(spec, xs[t][s0], xs[i][s0]));
                            done = false;
                            changed = true;
                            break;
                        }
                    }
                    if (done) break;
                }
            }
        }

        // Lexicographic minimization of the wrapped rows only.
        detail::lex_reduce(
            xs, t_rows,
            [&in_t](std::size_t t, std::size_t i, const std::vector<Codeword>& x) {
                return !in_t[i] || char_triple(x[i]).o2_exp < char_triple(x[t]).o2_exp;
            },
            opts.reduction);

        std::vector<std::size_t> order(xs.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&xs](std::size_t a, std::size_t b) { return echelon_key(xs[a]) < echelon_key(xs[b]); });
        std::vector<Codeword> sorted;
        std::vector<bool> sorted_t;
        for (std::size_t i : order) {
            sorted.push_back(xs[i]);
            sorted_t.push_back(in_t[i]);
        }
        xs = std::move(sorted);
        ++j;
        tr.bases.push_back(xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!sorted_t[i]) continue;
            CharGenerator g = harvest(xs[i], j);
            if (!detail::already_present(out.rows, g, opts.membership)) out.rows.push_back(std::move(g));
        }
    }
    tr.iterations = j;
    return tr;
}

inline CharMatrix algorithm_I(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m,
                              const CharMatrixOptions& opts = {}) {
    return algorithm_I_traced(spec, n, m, opts).matrix;
}

enum class CharMethod { Naive, Incremental };

/// Characteristic matrix of an arbitrary code: zero columns are punctured, the matrix is
/// computed on the support and mapped back to the original positions.
inline CharMatrix characteristic_matrix(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m,
                                        CharMethod method = CharMethod::Incremental,
                                        const CharMatrixOptions& opts = {}) {
    Punctured p = puncture(spec, n, m);
    CharMatrix out;
    out.spec = spec;
    out.n = n;
    out.column_exps = column_order_exps(spec, n, m);
    if (p.kept.empty()) return out;
    CharMatrix inner = method == CharMethod::Naive ? naive_char_matrix(spec, p.kept.size(), p.rows, opts)
                                                   : algorithm_I(spec, p.kept.size(), p.rows, opts);
    out.dimension = inner.dimension;
    for (const auto& g : inner.rows)
        out.rows.push_back(CharGenerator{unpuncture(p, g.codeword), unpuncture(p, g.span), g.o1_exp, g.o2_exp});
    return out;
}

/// Equality of the row sets, ignoring order.
inline bool same_rows(const CharMatrix& a, const CharMatrix& b, Membership m = Membership::Quadruple) {
    if (a.rows.size() != b.rows.size()) return false;
    if (m == Membership::Quadruple) {
        std::set<CharGenerator> sa(a.rows.begin(), a.rows.end()), sb(b.rows.begin(), b.rows.end());
        return sa == sb;
    }
    std::set<CharTriple> sa, sb;
    for (const auto& g : a.rows) sa.insert(g.triple());
    for (const auto& g : b.rows) sb.insert(g.triple());
    return sa == sb;
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate_char_matrix(const CharMatrix& x) {
    ValidationReport rep;
    const auto& spec = x.spec;
    std::set<std::pair<std::size_t, std::uint32_t>> starts, ends;
    std::map<std::size_t, std::set<std::uint32_t>> end_orders;
    for (std::size_t r = 0; r < x.rows.size(); ++r) {
        const auto& g = x.rows[r];
        const std::string tag = "row " + std::to_string(r + 1) + ": ";
        if (!g.span.is_interval()) {
            rep.violations.push_back(tag + "span is not an interval");
            continue;
        }
        if (!span_covers(g.span, g.codeword)) rep.violations.push_back(tag + "span does not cover the codeword");
        const Residue xa = g.codeword[g.span.a()], xb = g.codeword[g.span.b()];
        if (xa == 0 || xb == 0) rep.violations.push_back(tag + "boundary symbol is zero");
        if (spec.order_exp(xa) != g.o1_exp || spec.order_exp(xb) != g.o2_exp)
            rep.violations.push_back(tag + "boundary orders disagree with the codeword");
        if (!starts.insert({g.span.a(), g.o1_exp}).second)
            rep.violations.push_back(tag + "shares start position and starting order with an earlier row");
        if (!ends.insert({g.span.b(), g.o2_exp}).second)
            rep.violations.push_back(tag + "shares end position and ending order with an earlier row");
        end_orders[g.span.b()].insert(g.o2_exp);
    }
    const std::size_t total = detail::total_exps(x.column_exps);
    if (x.rows.size() != total)
        rep.violations.push_back("row count " + std::to_string(x.rows.size()) + " differs from the column exponent sum " +
                                 std::to_string(total));
    if (x.rows.size() > x.n * x.dimension)
        rep.violations.push_back("row count exceeds n * k = " + std::to_string(x.n * x.dimension));
    for (std::size_t j = 0; j < x.n && j < x.column_exps.size(); ++j) {
        std::set<std::uint32_t> want;
        for (std::uint32_t e = 1; e <= x.column_exps[j]; ++e) want.insert(e);
        auto it = end_orders.find(j);
        std::set<std::uint32_t> got = it == end_orders.end() ? std::set<std::uint32_t>{} : it->second;
        if (got != want)
            rep.violations.push_back("ending orders at position " + std::to_string(j) + " are not 1..k_" +
                                     std::to_string(j));
    }
    return rep;
}

} // namespace zpt
