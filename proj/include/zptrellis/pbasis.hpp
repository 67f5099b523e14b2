#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "zptrellis/codeword.hpp"
#include "zptrellis/error.hpp"

namespace zpt {

using CodeSet = std::set<Codeword>;

/// Ordered codeword list; p * row_i should lie in the p-span of the later rows.
struct PGenSequence {
    RingSpec spec;
    std::size_t n = 0;
    std::vector<Codeword> rows;
};

/// p-linearly independent p-generator sequence; flags record verified structure.
struct PBasis {
    RingSpec spec;
    std::size_t n = 0;
    std::vector<Codeword> rows;
    bool proper = false;
    bool coproper = false;
    bool row_echelon = false;

    std::size_t dimension() const noexcept { return rows.size(); }
};

namespace detail {

inline void check_rows(const std::vector<Codeword>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) rows[0].check_compatible(rows[i]);
}

inline std::vector<Codeword> nonzero_rows(const std::vector<Codeword>& rows) {
    std::vector<Codeword> out;
    for (const auto& r : rows)
        if (!r.is_zero()) out.push_back(r);
    return out;
}

/// All sums s + a*x with s in `base` and a in 0..p-1, sorted and deduplicated.
inline std::vector<Codeword> expand_p_span(const std::vector<Codeword>& base, const Codeword& x) {
    const std::uint32_t p = x.spec().p();
    check_guard(static_cast<std::uint64_t>(base.size()) * p, "p-span enumeration");
    std::vector<Codeword> next;
    next.reserve(base.size() * p);
    for (const auto& s : base) {
        Codeword acc = s;
        for (std::uint32_t a = 0; a < p; ++a) {
            next.push_back(acc);
            acc = acc + x;
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

inline PBasis make_basis(const RingSpec& spec, std::size_t n, std::vector<Codeword> rows);

} // namespace detail

/// Each row x followed by p x, p^2 x, ... with zero rows omitted.
inline PGenSequence p_generators_from_matrix(const std::vector<Codeword>& m) {
    PGenSequence out;
    if (m.empty()) return out;
    detail::check_rows(m);
    out.spec = m.front().spec();
    out.n = m.front().size();
    const Residue p = out.spec.p();
    for (const auto& row : m) {
        Codeword x = row;
        while (!x.is_zero()) {
            out.rows.push_back(x);
            x = x.scaled(p);
        }
    }
    return out;
}

/// Every sum of a_i * row_i with a_i in 0..p-1. The zero word of length n for an empty list.
inline CodeSet p_span_enumerate(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& rows) {
    std::vector<Codeword> cur{Codeword(spec, n)};
    for (const auto& r : rows) cur = detail::expand_p_span(cur, r);
    return CodeSet(cur.begin(), cur.end());
}

inline CodeSet p_span_enumerate(const PGenSequence& v) { return p_span_enumerate(v.spec, v.n, v.rows); }

/// p-linear independence by direct enumeration of the p-span (guarded).
inline bool is_p_linearly_independent(const std::vector<Codeword>& rows) {
    if (rows.empty()) return true;
    detail::check_rows(rows);
    std::vector<Codeword> cur{Codeword(rows.front().spec(), rows.front().size())};
    for (const auto& r : rows) {
        std::size_t expect = cur.size() * r.spec().p();
        cur = detail::expand_p_span(cur, r);
        if (cur.size() != expect) return false;
    }
    return true;
}

/// p * row_i lies in the p-span of rows i+1.. for every i.
inline bool is_p_generator_sequence(const std::vector<Codeword>& rows) {
    if (rows.empty()) return true;
    detail::check_rows(rows);
    const auto& spec = rows.front().spec();
    std::vector<Codeword> suffix{Codeword(spec, rows.front().size())};
    for (std::size_t i = rows.size(); i-- > 0;) {
        Codeword px = rows[i].scaled(spec.p());
        if (!std::binary_search(suffix.begin(), suffix.end(), px)) return false;
        suffix = detail::expand_p_span(suffix, rows[i]);
    }
    return true;
}

inline bool is_p_generator_sequence(const PGenSequence& v) { return is_p_generator_sequence(v.rows); }
inline bool is_p_linearly_independent(const PGenSequence& v) { return is_p_linearly_independent(v.rows); }

/// No two rows start at the same position with associate starting symbols.
inline bool is_proper(const std::vector<Codeword>& rows) {
    std::set<std::pair<std::size_t, std::uint32_t>> seen;
    for (const auto& r : rows) {
        auto t = char_triple(r);
        if (t.span.is_empty()) return false;
        if (!seen.insert({t.start(), t.o1_exp}).second) return false;
    }
    return true;
}

/// No two rows end at the same position with associate ending symbols.
inline bool is_coproper(const std::vector<Codeword>& rows) {
    std::set<std::pair<std::size_t, std::uint32_t>> seen;
    for (const auto& r : rows) {
        auto t = char_triple(r);
        if (t.span.is_empty()) return false;
        if (!seen.insert({t.end(), t.o2_exp}).second) return false;
    }
    return true;
}

inline bool is_biproper(const std::vector<Codeword>& rows) { return is_proper(rows) && is_coproper(rows); }

/// Starts are nondecreasing; equal starts have strictly decreasing starting order.
inline bool is_row_echelon(const std::vector<Codeword>& rows) {
    for (const auto& r : rows)
        if (r.is_zero()) return false;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(echelon_key(rows[i - 1]) < echelon_key(rows[i]))) return false;
    return true;
}

inline void sort_echelon(std::vector<Codeword>& rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Codeword& a, const Codeword& b) { return echelon_key(a) < echelon_key(b); });
}

namespace detail {
inline PBasis make_basis(const RingSpec& spec, std::size_t n, std::vector<Codeword> rows) {
    PBasis b;
    b.spec = spec;
    b.n = n;
    b.rows = std::move(rows);
    b.proper = is_proper(b.rows);
    b.coproper = is_coproper(b.rows);
    b.row_echelon = is_row_echelon(b.rows);
    return b;
}
} // namespace detail

/// Properization: repeatedly take the rows with the earliest start, keep the first of highest
/// starting order and cancel the starting symbol of the other maximal-order rows against it.
inline PBasis algorithm_A(const PGenSequence& v) {
    std::vector<Codeword> s = detail::nonzero_rows(v.rows);
    std::vector<Codeword> out;
    while (!s.empty()) {
        std::size_t s0 = v.n;
        for (const auto& x : s) s0 = std::min(s0, *x.first_nonzero());
        std::uint32_t best = 0;
        for (const auto& x : s)
            if (*x.first_nonzero() == s0) best = std::max(best, v.spec.order_exp(x[s0]));
        std::vector<std::size_t> top;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (*s[i].first_nonzero() == s0 && v.spec.order_exp(s[i][s0]) == best) top.push_back(i);
        const std::size_t pick = top.front();
        const Codeword pivot = s[pick];
        out.push_back(pivot);
        for (std::size_t i : top) {
            if (i == pick) continue;
            s[i] = s[i].plus_scaled(pivot, cancel_coefficient(v.spec, s[i][s0], pivot[s0]));
        }
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(pick));
        s = detail::nonzero_rows(s);
    }
    return detail::make_basis(v.spec, v.n, std::move(out));
}

/// Coproperization of a proper row-echelon basis: for rows sharing the latest
/// (end, ending order), cancel their ending symbol against the last such row.
inline PBasis algorithm_B(const PBasis& w) {
    if (!is_proper(w.rows) || !is_row_echelon(w.rows))
        throw std::invalid_argument("algorithm_B: input must be proper and in row echelon form");
    std::vector<Codeword> s = w.rows;
    for (;;) {
        std::map<std::pair<std::size_t, std::uint32_t>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto t = char_triple(s[i]);
            groups[{t.end(), t.o2_exp}].push_back(i);
        }
        const std::vector<std::size_t>* chosen = nullptr;
        std::size_t e = 0;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            if (it->second.size() > 1) {
                chosen = &it->second;
                e = it->first.first;
                break;
            }
        }
        if (chosen == nullptr) break;
        const Codeword pivot = s[chosen->back()];
        for (std::size_t k = 0; k + 1 < chosen->size(); ++k) {
            std::size_t i = (*chosen)[k];
            s[i] = s[i].plus_scaled(pivot, cancel_coefficient(w.spec, s[i][e], pivot[e]));
        }
        s = detail::nonzero_rows(s);
    }
    sort_echelon(s);
    return detail::make_basis(w.spec, w.n, std::move(s));
}

/// Coefficient range for lexicographic reduction steps x_i + a x_j.
enum class CoefficientRange {
    Full,     ///< a in 1..p^alpha-1; reaches the lexicographically least member of each class
    PLinear,  ///< a in 1..p-1
};

struct ReductionOptions {
    CoefficientRange coefficients = CoefficientRange::Full;
    bool unit_normalize = true;  ///< also try u * x_i for every unit u
};

namespace detail {

/// Closed conventional span of a strictly inside that of b.
inline bool strictly_inside(const CharTriple& a, const CharTriple& b) {
    return b.start() <= a.start() && a.end() <= b.end() && !(a.start() == b.start() && a.end() == b.end());
}

using ReductionFilter = std::function<bool(std::size_t target, std::size_t other, const std::vector<Codeword>&)>;

/// Greedy lexicographic descent of the target rows. Each accepted step keeps the row's triple.
inline void lex_reduce(std::vector<Codeword>& x, const std::vector<std::size_t>& targets,
                       const ReductionFilter& filter, const ReductionOptions& opts) {
    if (x.empty()) return;
    const RingSpec spec = x.front().spec();
    const Residue top = opts.coefficients == CoefficientRange::Full ? spec.modulus() : spec.p();
    const std::vector<Residue> units = spec.units();
    bool changed = true;
    while (changed) {
        changed = false;
        if (opts.unit_normalize) {
            for (std::size_t i : targets) {
                Codeword best = x[i];
                for (Residue u : units) best = std::min(best, x[i].scaled(u));
                if (best < x[i]) {
                    x[i] = best;
                    changed = true;
                }
            }
        }
        for (std::size_t i : targets) {
            for (;;) {
                const CharTriple ti = char_triple(x[i]);
                bool found = false;
                for (std::size_t j = 0; j < x.size() && !found; ++j) {
                    if (j == i) continue;
                    if (filter && !filter(i, j, x)) continue;
                    if (!strictly_inside(char_triple(x[j]), ti)) continue;
                    for (Residue a = 1; a < top; ++a) {
                        Codeword y = x[i].plus_scaled(x[j], a);
                        if (y < x[i] && char_triple(y) == ti) {
                            x[i] = std::move(y);
                            found = true;
                            break;
                        }
                    }
                }
                if (!found) break;
                changed = true;
            }
        }
    }
}

inline std::vector<std::size_t> all_indices(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

} // namespace detail

/// Lexicographic minimization of a biproper row-echelon basis: x_i is replaced by
/// x_i + a x_j whenever x_j's span lies strictly inside x_i's and the result is smaller.
inline PBasis algorithm_C(const PBasis& x, const ReductionOptions& opts = {}) {
    std::vector<Codeword> rows = x.rows;
    detail::lex_reduce(rows, detail::all_indices(rows.size()), nullptr, opts);
    sort_echelon(rows);
    return detail::make_basis(x.spec, x.n, std::move(rows));
}

/// A, then B, then C on the p-generator expansion of M.
inline PBasis lex_first_biproper_basis(const std::vector<Codeword>& m, const ReductionOptions& opts = {}) {
    return algorithm_C(algorithm_B(algorithm_A(p_generators_from_matrix(m))), opts);
}

inline PBasis lex_first_biproper_basis(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m,
                                       const ReductionOptions& opts = {}) {
    if (m.empty()) return detail::make_basis(spec, n, {});
    return lex_first_biproper_basis(m, opts);
}

inline std::size_t p_dimension(const std::vector<Codeword>& m) {
    return algorithm_A(p_generators_from_matrix(m)).rows.size();
}

} // namespace zpt
