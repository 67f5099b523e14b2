#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zptrellis/charmatrix.hpp"
#include "zptrellis/error.hpp"
#include "zptrellis/pbasis.hpp"
#include "zptrellis/trellis.hpp"

namespace zpt {

struct SearchResult {
    std::vector<std::size_t> indices;  ///< 0-based rows of the characteristic matrix
    Trellis trellis;
    Profile profile;
};

struct SearchOptions {
    bool verify_code = true;  ///< check each candidate's represented code against C
};

/// Store of the best candidates seen so far: the Pareto frontier for theta, the set of
/// minimizers for the total orders. Insertion order is kept.
class Frontier {
public:
    Frontier(std::size_t n, Order order) : n_(n), order_(order) {}

    void offer(SearchResult r) {
        for (const auto& e : items_) {
            Comparison c = compare(e.profile, r.profile, n_, order_);
            if (c == Comparison::Less) return;
        }
        std::vector<SearchResult> keep;
        for (auto& e : items_)
            if (compare(r.profile, e.profile, n_, order_) != Comparison::Less) keep.push_back(std::move(e));
        keep.push_back(std::move(r));
        items_ = std::move(keep);
    }

    std::vector<SearchResult>& items() noexcept { return items_; }

private:
    std::size_t n_;
    Order order_;
    std::vector<SearchResult> items_;
};

/// Every p-linearly independent k-subset of the characteristic generators gives a product
/// trellis for C; return the minimal ones under `order`, ordered by index set.
inline std::vector<SearchResult> search_minimal_tailbiting(const CharMatrix& x, std::size_t k, Order order,
                                                           const SearchOptions& opts = {}) {
    const std::size_t n = x.n;
    if (x.rows.size() < k) throw std::invalid_argument("search: fewer generators than the requested dimension");
    const RingSpec& spec = x.spec;
    const Alphabet alphabet = Alphabet::ring(spec);

    WordSet code;
    if (opts.verify_code) {
        auto basis = algorithm_A(p_generators_from_matrix(x.codewords()));
        if (basis.rows.size() != k)
            throw std::invalid_argument("search: requested dimension differs from the code's p-dimension");
        code = to_words(p_span_enumerate(spec, n, basis.rows));
    }

    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < x.rows.size(); ++i)
        if (!x.rows[i].span.is_full()) usable.push_back(i);

    Frontier frontier(n, order);
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, const std::vector<Codeword>&, const Trellis&)> rec =
        [&](std::size_t from, const std::vector<Codeword>& span_set, const Trellis& partial) {
            if (chosen.size() == k) {
                Trellis t = reduce(partial);
                if (opts.verify_code && represented_code(t) != code)
                    throw InconsistencyError("search: product trellis does not represent the code");
                Profile pr = profile(t);
                frontier.offer(SearchResult{chosen, std::move(t), std::move(pr)});
                return;
            }
            for (std::size_t u = from; u + (k - chosen.size()) <= usable.size(); ++u) {
                const CharGenerator& g = x.rows[usable[u]];
                auto grown = detail::expand_p_span(span_set, g.codeword);
                if (grown.size() != span_set.size() * spec.p()) continue;  // dependent on the chosen rows
                chosen.push_back(usable[u]);
                rec(u + 1, grown, product(partial, elementary_trellis(g.codeword, g.span)));
                chosen.pop_back();
            }
        };
    rec(0, std::vector<Codeword>{Codeword(spec, n)}, Trellis::trivial(n, alphabet));
    if (frontier.items().empty())
        throw InfeasibleError("search: no p-linearly independent subset of the generators spans the code");
    return std::move(frontier.items());
}

/// Trellis from an explicit choice of characteristic generators.
inline Trellis trellis_from_selection(const CharMatrix& x, const std::vector<std::size_t>& indices) {
    std::vector<Codeword> rows;
    std::vector<std::pair<Codeword, CyclicSpan>> gens;
    for (std::size_t i : indices) {
        if (i >= x.rows.size()) throw std::invalid_argument("generator index out of range");
        rows.push_back(x.rows[i].codeword);
        gens.emplace_back(x.rows[i].codeword, x.rows[i].span);
    }
    if (!is_p_linearly_independent(rows)) throw InfeasibleError("selected generators are p-linearly dependent");
    if (rows.size() != x.dimension)
        throw InfeasibleError("selected " + std::to_string(rows.size()) + " generators, the code needs " +
                              std::to_string(x.dimension));
    return build_from_generators(x.spec, x.n, gens);
}

} // namespace zpt
