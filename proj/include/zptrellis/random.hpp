#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "zptrellis/codeword.hpp"

namespace zpt {

/// Random generator matrix with no identically-zero column. Entries are scaled by random
/// powers of p so that non-unit boundary symbols show up often.
template <class Rng>
std::vector<Codeword> random_code(const RingSpec& spec, std::size_t n, std::size_t rows, Rng& rng) {
    std::uniform_int_distribution<Residue> sym(0, spec.modulus() - 1);
    const Residue scales[] = {1, 1, spec.p(), spec.pow_p(spec.alpha() - 1)};
    std::uniform_int_distribution<int> pick(0, 3);
    for (;;) {
        std::vector<Codeword> m;
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Residue> s(n);
            for (auto& v : s) v = spec.mul(sym(rng), scales[pick(rng)]);
            m.emplace_back(spec, std::move(s));
        }
        bool full = true;
        for (std::size_t i = 0; i < n && full; ++i) {
            bool any = false;
            for (const auto& r : m) any = any || r[i] != 0;
            full = any;
        }
        if (full) return m;
    }
}

} // namespace zpt
