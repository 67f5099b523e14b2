#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "zptrellis/codeword.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/pbasis.hpp"
#include "zptrellis/trellis.hpp"

namespace zpt {

/// Every element of the code generated by M.
inline CodeSet enumerate_code(const RingSpec& spec, std::size_t n, const std::vector<Codeword>& m) {
    if (m.empty()) return CodeSet{Codeword(spec, n)};
    auto basis = algorithm_A(p_generators_from_matrix(m));
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < basis.rows.size(); ++i) {
        size *= spec.p();
        check_guard(size, "enumerate_code");
    }
    return p_span_enumerate(spec, n, basis.rows);
}

/// A few codewords generating C, picked greedily.
inline std::vector<Codeword> generating_set(const CodeSet& c) {
    std::unordered_set<Codeword, CodewordHash> h;
    if (c.empty()) return {};
    h.insert(Codeword(c.begin()->spec(), c.begin()->size()));
    std::vector<Codeword> gens;
    for (const auto& x : c) {
        if (h.count(x)) continue;
        gens.push_back(x);
        std::vector<Codeword> base(h.begin(), h.end());
        Codeword mult = x;
        while (!h.count(mult)) {
            for (const auto& b : base) h.insert(b + mult);
            mult = mult + x;
        }
    }
    return gens;
}

/// Closed conventional span length of a nonzero word.
inline std::size_t conventional_length(const Codeword& x) { return *x.last_nonzero() - *x.first_nonzero() + 1; }

struct AtomicClass {
    CharTriple triple;
    std::vector<Codeword> members;
};

/// Decides atomicity of codewords of one code. A nonzero c is non-atomic when it lies in the
/// subgroup generated by codewords of strictly shorter span, or differs from b*e by such an
/// element, where e has the same conventional span as c, a strictly smaller first or last
/// order, and b in 1..p-1.
class AtomicityOracle {
public:
    explicit AtomicityOracle(const CodeSet& c) : code_(c) {
        if (c.empty()) return;
        if (c.size() > (std::size_t{1} << 14) || c.begin()->size() > 8)
            throw GuardExceeded("atomicity oracle: code too large for exhaustive decomposition search");
        n_ = c.begin()->size();
        spec_ = c.begin()->spec();
        shorter_.resize(n_ + 2);
        // shorter_[L]: subgroup generated by nonzero codewords of length < L
        std::unordered_set<Codeword, CodewordHash> h{Codeword(spec_, n_)};
        shorter_[1] = h;
        for (std::size_t len = 1; len <= n_; ++len) {
            for (const auto& x : c)
                if (!x.is_zero() && conventional_length(x) == len) add_generator(h, x);
            shorter_[len + 1] = h;
        }
        for (const auto& x : c)
            if (!x.is_zero()) by_span_[char_triple(x).span].push_back(x);
    }

    bool is_atomic(const Codeword& c) const {
        if (c.is_zero()) return false;
        const auto& g = shorter_[conventional_length(c)];
        if (g.count(c)) return false;
        const CharTriple tc = char_triple(c);
        auto it = by_span_.find(tc.span);
        if (it == by_span_.end()) return true;
        for (const auto& e : it->second) {
            auto te = char_triple(e);
            if (!(te.o1_exp < tc.o1_exp || te.o2_exp < tc.o2_exp)) continue;
            for (Residue b = 1; b < spec_.p(); ++b)
                if (g.count(c - e.scaled(b))) return false;
        }
        return true;
    }

    /// Atomic codewords grouped by triple, in row echelon order of the triples.
    std::vector<AtomicClass> classes() const {
        std::map<CharTriple, std::vector<Codeword>> m;
        for (const auto& x : code_)
            if (is_atomic(x)) m[char_triple(x)].push_back(x);
        std::vector<AtomicClass> out;
        for (auto& [t, members] : m) out.push_back({t, std::move(members)});
        std::stable_sort(out.begin(), out.end(), [](const AtomicClass& a, const AtomicClass& b) {
            return std::make_pair(a.triple.start(), -static_cast<int>(a.triple.o1_exp)) <
                   std::make_pair(b.triple.start(), -static_cast<int>(b.triple.o1_exp));
        });
        return out;
    }

private:
    static void add_generator(std::unordered_set<Codeword, CodewordHash>& h, const Codeword& x) {
        if (h.count(x)) return;
        std::vector<Codeword> base(h.begin(), h.end());
        Codeword mult = x;
        while (!h.count(mult)) {
            for (const auto& b : base) h.insert(b + mult);
            mult = mult + x;
        }
    }

    const CodeSet& code_;
    std::size_t n_ = 0;
    RingSpec spec_;
    std::vector<std::unordered_set<Codeword, CodewordHash>> shorter_;
    std::map<CyclicSpan, std::vector<Codeword>> by_span_;
};

inline bool is_atomic(const Codeword& c, const CodeSet& code) { return AtomicityOracle(code).is_atomic(c); }

inline std::vector<AtomicClass> atomic_classes(const CodeSet& code) { return AtomicityOracle(code).classes(); }

/// Triple of sum a_j x_j predicted from the terms' triples: earliest start with its largest
/// starting order, latest end with its largest ending order.
inline CharTriple triple_of_combination(const std::vector<std::pair<Residue, Codeword>>& terms) {
    if (terms.empty()) throw std::invalid_argument("triple_of_combination: no terms");
    const std::size_t n = terms.front().second.size();
    std::size_t start = n, end = 0;
    for (const auto& [a, x] : terms) {
        auto t = char_triple(x);
        start = std::min(start, t.start());
        end = std::max(end, t.end());
    }
    std::uint32_t o1 = 0, o2 = 0;
    for (const auto& [a, x] : terms) {
        auto t = char_triple(x);
        if (t.start() == start) o1 = std::max(o1, t.o1_exp);
        if (t.end() == end) o2 = std::max(o2, t.o2_exp);
    }
    return CharTriple{CyclicSpan::interval(start, end, n), o1, o2};
}

/// p-dimension of the codewords supported on [a,b] whose a-th and b-th symbols have
/// order exponent at most s and t.
inline std::size_t subcode_pdim(const CodeSet& code, std::size_t a, std::size_t b, std::uint32_t s, std::uint32_t t) {
    if (code.empty()) return 0;
    const RingSpec spec = code.begin()->spec();
    std::size_t count = 0;
    for (const auto& x : code) {
        bool ok = true;
        for (std::size_t i = 0; i < x.size() && ok; ++i)
            if (x[i] != 0 && (i < a || i > b)) ok = false;
        ok = ok && spec.order_exp(x[a]) <= s && spec.order_exp(x[b]) <= t;
        count += ok;
    }
    std::size_t k = 0;
    while (count > 1) {
        if (count % spec.p() != 0) throw InconsistencyError("subcode_pdim: subcode size is not a power of p");
        count /= spec.p();
        ++k;
    }
    return k;
}

/// Classes whose span lies in [a,b] with boundary orders bounded by s and t where they touch a and b.
inline std::size_t classes_in_window(const std::vector<AtomicClass>& classes, std::size_t a, std::size_t b,
                                     std::uint32_t s, std::uint32_t t) {
    std::size_t c = 0;
    for (const auto& cl : classes) {
        const auto& tr = cl.triple;
        if (tr.start() < a || tr.end() > b) continue;
        if (tr.start() == a && tr.o1_exp > s) continue;
        if (tr.end() == b && tr.o2_exp > t) continue;
        // a class starting at a also has its symbol at b bounded when a == b
        ++c;
    }
    return c;
}

struct AtomicPropertyReport {
    std::vector<std::string> violations;
    std::map<std::string, std::size_t> checks;  ///< number of individual checks per property
    bool ok() const noexcept { return violations.empty(); }
};

struct AtomicPropertyOptions {
    std::size_t combinations = 40;  ///< sampled combinations for the triple formula
    std::size_t echelon_draws = 5;  ///< random class representatives for the basis property
    std::uint64_t seed = 1;
};

/// Runs every atomic-class property against a given class table.
inline AtomicPropertyReport verify_atomic_properties(const CodeSet& code, const std::vector<AtomicClass>& classes,
                                      const AtomicPropertyOptions& opts = {}) {
    AtomicPropertyReport rep;
    if (code.empty()) return rep;
    const RingSpec spec = code.begin()->spec();
    const std::size_t n = code.begin()->size();
    const AtomicityOracle oracle(code);
    std::mt19937_64 rng(opts.seed);
    auto fail = [&](const std::string& what) { rep.violations.push_back(what); };

    std::size_t k = 0;
    for (std::size_t size = code.size(); size > 1; size /= spec.p()) ++k;
    ++rep.checks["class count"];
    if (classes.size() != k)
        fail("class count " + std::to_string(classes.size()) + " differs from p-dimension " + std::to_string(k));

    // distinct classes differ in (start, o1) and in (end, o2)
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            ++rep.checks["distinct boundary pairs"];
            const auto &a = classes[i].triple, &b = classes[j].triple;
            if (a.start() == b.start() && a.o1_exp == b.o1_exp)
                fail("classes " + a.to_string() + " and " + b.to_string() + " share start and starting order");
            if (a.end() == b.end() && a.o2_exp == b.o2_exp)
                fail("classes " + a.to_string() + " and " + b.to_string() + " share end and ending order");
        }

    // members are atomic with the class triple, and every codeword with that triple is a member
    for (const auto& cl : classes) {
        std::set<Codeword> members(cl.members.begin(), cl.members.end());
        for (const auto& x : code) {
            if (x.is_zero() || char_triple(x) != cl.triple) continue;
            ++rep.checks["triple transfers atomicity"];
            if (!oracle.is_atomic(x)) fail("codeword " + x.to_string() + " shares an atomic triple but is not atomic");
            if (!members.count(x)) fail("codeword " + x.to_string() + " is missing from class " + cl.triple.to_string());
        }
        for (const auto& x : cl.members)
            if (char_triple(x) != cl.triple) fail("member " + x.to_string() + " has a different triple");
    }

    if (classes.empty()) return rep;

    // one representative per class: independent, and biproper row echelon basis of C
    for (std::size_t draw = 0; draw < opts.echelon_draws; ++draw) {
        std::vector<Codeword> reps;
        for (const auto& cl : classes) {
            if (cl.members.empty()) {
                fail("class " + cl.triple.to_string() + " has no members");
                return rep;
            }
            reps.push_back(cl.members[rng() % cl.members.size()]);
        }
        ++rep.checks["representatives independent"];
        if (!is_p_linearly_independent(reps)) fail("class representatives are p-linearly dependent");
        sort_echelon(reps);
        ++rep.checks["representatives form a biproper basis"];
        if (!is_biproper(reps) || !is_row_echelon(reps) || p_span_enumerate(spec, n, reps) != code)
            fail("class representatives in echelon order are not a biproper basis of the code");
    }

    // triple multiset agrees with a biproper basis computed by elimination
    {
        auto b = algorithm_B(algorithm_A(p_generators_from_matrix(generating_set(code))));
        std::multiset<CharTriple> want, got;
        for (const auto& r : b.rows) want.insert(char_triple(r));
        for (const auto& cl : classes) got.insert(cl.triple);
        ++rep.checks["triples match a biproper basis"];
        if (want != got) fail("class triples differ from the triples of a biproper basis");
    }

    // triple formula on random combinations of distinct classes
    for (std::size_t it = 0; it < opts.combinations; ++it) {
        std::vector<std::pair<Residue, Codeword>> terms;
        for (const auto& cl : classes)
            if (rng() % 2) terms.emplace_back(1 + rng() % (spec.p() - 1), cl.members[rng() % cl.members.size()]);
        if (terms.empty()) terms.emplace_back(1, classes[rng() % classes.size()].members.front());
        Codeword sum(spec, n);
        for (const auto& [a, x] : terms) sum = sum.plus_scaled(x, a);
        ++rep.checks["triple formula"];
        if (sum.is_zero()) {
            fail("combination of distinct classes vanished");
            continue;
        }
        if (triple_of_combination(terms) != char_triple(sum))
            fail("triple formula " + triple_of_combination(terms).to_string() + " differs from " +
                 char_triple(sum).to_string() + " for " + sum.to_string());
    }

    // subcode dimension equals the number of classes in the window
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::uint32_t s = 0; s <= spec.alpha(); ++s)
                for (std::uint32_t t = 0; t <= spec.alpha(); ++t) {
                    ++rep.checks["subcode dimension"];
                    std::size_t lhs = subcode_pdim(code, a, b, s, t), rhs = classes_in_window(classes, a, b, s, t);
                    if (lhs != rhs)
                        fail("window [" + std::to_string(a) + "," + std::to_string(b) + "] s=" + std::to_string(s) +
                             " t=" + std::to_string(t) + ": subcode dimension " + std::to_string(lhs) + " vs " +
                             std::to_string(rhs) + " classes");
                }

    // shortest codewords: atomic, and each class is the unit multiples of one codeword
    std::size_t shortest = n + 1;
    for (const auto& x : code)
        if (!x.is_zero()) shortest = std::min(shortest, conventional_length(x));
    std::map<CharTriple, std::vector<Codeword>> short_classes;
    for (const auto& x : code)
        if (!x.is_zero() && conventional_length(x) == shortest) {
            ++rep.checks["shortest codewords atomic"];
            if (!oracle.is_atomic(x)) fail("shortest codeword " + x.to_string() + " is not atomic");
            short_classes[char_triple(x)].push_back(x);
        }
    for (const auto& [t, members] : short_classes) {
        std::set<Codeword> unit_multiples;
        for (Residue u : spec.units()) unit_multiples.insert(members.front().scaled(u));
        ++rep.checks["shortest class is unit multiples"];
        if (unit_multiples != std::set<Codeword>(members.begin(), members.end()))
            fail("shortest class " + t.to_string() + " is not the unit multiples of one codeword");
    }
    return rep;
}

inline AtomicPropertyReport verify_atomic_properties(const CodeSet& code, const AtomicPropertyOptions& opts = {}) {
    return verify_atomic_properties(code, atomic_classes(code), opts);
}

/// Distinct vertex profiles (times 0..n-1) that are theta-minimal among all products of
/// elementary trellises over every p-basis of C and every span choice. Uses the fact that
/// such a product has p^(number of spans containing time t) vertices at time t.
inline std::set<std::vector<std::uint64_t>> theta_minimal_product_profiles(const CodeSet& code, std::size_t k) {
    std::set<std::vector<std::uint64_t>> all;
    if (code.empty()) return all;
    const std::size_t n = code.begin()->size();
    const std::uint32_t p = code.begin()->spec().p();
    std::vector<Codeword> nonzero;
    for (const auto& x : code)
        if (!x.is_zero()) nonzero.push_back(x);
    // per codeword: time-count vectors of every covering span, full span included
    std::vector<std::vector<std::vector<std::uint8_t>>> options(nonzero.size());
    for (std::size_t c = 0; c < nonzero.size(); ++c) {
        std::set<std::vector<std::uint8_t>> seen;
        const auto& x = nonzero[c];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                auto s = CyclicSpan::interval(a, b, n);
                if (!span_covers(s, x) || x[a] == 0 || x[b] == 0) continue;
                std::vector<std::uint8_t> v(n);
                for (std::size_t t = 0; t < n; ++t) v[t] = s.contains_time(t);
                seen.insert(v);
            }
        seen.insert(std::vector<std::uint8_t>(n, 1));
        options[c].assign(seen.begin(), seen.end());
    }
    std::vector<std::size_t> pick;
    std::vector<std::uint32_t> exps(n, 0);
    std::function<void(std::size_t, const std::vector<Codeword>&)> choose = [&](std::size_t from,
                                                                                const std::vector<Codeword>& span) {
        if (pick.size() == k) {
            std::function<void(std::size_t)> spans = [&](std::size_t d) {
                if (d == k) {
                    std::vector<std::uint64_t> prof(n);
                    for (std::size_t t = 0; t < n; ++t) {
                        std::uint64_t v = 1;
                        for (std::uint32_t e = 0; e < exps[t]; ++e) v *= p;
                        prof[t] = v;
                    }
                    all.insert(prof);
                    return;
                }
                for (const auto& opt : options[pick[d]]) {
                    for (std::size_t t = 0; t < n; ++t) exps[t] += opt[t];
                    spans(d + 1);
                    for (std::size_t t = 0; t < n; ++t) exps[t] -= opt[t];
                }
            };
            spans(0);
            return;
        }
        for (std::size_t c = from; c < nonzero.size(); ++c) {
            auto grown = detail::expand_p_span(span, nonzero[c]);
            if (grown.size() != span.size() * p) continue;
            pick.push_back(c);
            choose(c + 1, grown);
            pick.pop_back();
        }
    };
    choose(0, std::vector<Codeword>{Codeword(code.begin()->spec(), n)});
    std::set<std::vector<std::uint64_t>> minimal;
    for (const auto& a : all) {
        bool dominated = false;
        for (const auto& b : all) {
            if (a == b) continue;
            bool le = true;
            for (std::size_t t = 0; t < n; ++t) le = le && b[t] <= a[t];
            if (le) {
                dominated = true;
                break;
            }
        }
        if (!dominated) minimal.insert(a);
    }
    return minimal;
}

/// Nearest codeword by exhaustive search: least cost, then least word.
template <class Metric>
std::pair<double, Word> nearest_codeword(const WordSet& code, const Word& received, Metric metric) {
    std::pair<double, Word> best{0, {}};
    bool first = true;
    for (const auto& w : code) {
        double d = 0;
        for (std::size_t i = 0; i < w.size(); ++i) d += metric(received[i], w[i]);
        if (first || std::make_pair(d, w) < best) best = {d, w};
        first = false;
    }
    return best;
}

} // namespace zpt
