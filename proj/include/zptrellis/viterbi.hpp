#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zptrellis/error.hpp"
#include "zptrellis/trellis.hpp"

namespace zpt {

/// Symbol mismatch count.
struct HammingMetric {
    double operator()(Symbol received, Symbol label) const noexcept { return received == label ? 0.0 : 1.0; }
};

struct DecodeResult {
    Word word;
    double cost = 0;
};

/// Minimum-cost represented word; ties go to the lexicographically smallest word.
/// Tail-biting trellises get one pass per vertex of V_0, keeping only cycles that close there.
template <class Metric>
DecodeResult viterbi_decode(const Trellis& t, const Word& received, Metric metric) {
    const std::size_t n = t.length();
    if (received.size() != n)
        throw std::invalid_argument("received word has length " + std::to_string(received.size()) + ", expected " +
                                    std::to_string(n));
    using State = std::optional<std::pair<double, Word>>;
    std::optional<DecodeResult> best;
    const std::size_t starts = t.tail_biting() ? t.vertices(0).size() : 1;
    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<State> cur(t.vertices(0).size());
        cur[s] = std::make_pair(0.0, Word{});
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<State> nxt(t.vertices(t.next(i)).size());
            for (const auto& e : t.edges(i)) {
                if (!cur[e.from]) continue;
                std::pair<double, Word> cand{cur[e.from]->first + metric(received[i], e.label), cur[e.from]->second};
                cand.second.push_back(e.label);
                if (!nxt[e.to] || cand < *nxt[e.to]) nxt[e.to] = std::move(cand);
            }
            cur = std::move(nxt);
        }
        const State& end = cur[t.tail_biting() ? s : 0];
        if (!end) continue;
        if (!best || std::make_pair(end->first, end->second) < std::make_pair(best->cost, best->word))
            best = DecodeResult{end->second, end->first};
    }
    if (!best) throw InconsistencyError("viterbi_decode: trellis has no complete path");
    return *best;
}

inline DecodeResult viterbi_decode(const Trellis& t, const Word& received) {
    return viterbi_decode(t, received, HammingMetric{});
}

} // namespace zpt
