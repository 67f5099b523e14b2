#pragma once

#include <initializer_list>
#include <vector>

#include "zptrellis/codeword.hpp"

namespace fx {

inline const zpt::RingSpec z8{2, 3};
inline const zpt::RingSpec z4{2, 2};
inline const zpt::RingSpec z9{3, 2};

inline zpt::Codeword cw(const zpt::RingSpec& spec, std::initializer_list<std::int64_t> v) {
    return zpt::Codeword(spec, std::vector<std::int64_t>(v));
}

inline std::vector<zpt::Codeword> rows(const zpt::RingSpec& spec,
                                       std::initializer_list<std::initializer_list<std::int64_t>> m) {
    std::vector<zpt::Codeword> out;
    for (auto r : m) out.push_back(cw(spec, r));
    return out;
}

/// The running Z_8 example: three generators of length 4.
inline std::vector<zpt::Codeword> example_matrix() {
    return rows(z8, {{1, 2, 1, 2}, {2, 0, 4, 2}, {0, 0, 4, 4}});
}

} // namespace fx
