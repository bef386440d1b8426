#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "runmove/move_table.hpp"

namespace runmove::test {

// The 16-element example permutation with 9 runs.
inline const std::vector<std::uint64_t> kExamplePermutation = {1,  2, 9,  10, 11, 3, 12, 13,
                                                              4,  5, 14, 0,  15, 6, 7,  8};

inline std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

inline std::vector<std::uint8_t> with_sentinel(std::string_view s) {
    auto b = bytes(s);
    b.push_back(0);
    return b;
}

inline std::vector<std::uint64_t> identity(std::uint64_t n) {
    std::vector<std::uint64_t> v(n);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

} // namespace runmove::test
