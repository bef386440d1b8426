#pragma once

// Brute-force reference implementations. Everything here is definitional and
// deliberately slow; inputs are capped at kOracleLimit positions.

#include <cstdint>
#include <span>
#include <vector>

#include "runmove/move_table.hpp"

namespace runmove::oracle {

inline constexpr std::uint64_t kOracleLimit = 1'000'000;

using NaivePermutation = std::vector<std::uint64_t>;

// Suffix array of a sentinel-terminated text by direct suffix comparison.
std::vector<std::uint64_t> naive_sa(std::span<const std::uint8_t> text);
std::vector<std::uint8_t> naive_bwt(std::span<const std::uint8_t> text,
                                    std::span<const std::uint64_t> sa);
// Inverts a BWT by the textbook LF walk; returns the text with trailing sentinel.
std::vector<std::uint8_t> naive_invert(std::span<const std::uint8_t> bwt);

// LF(i) = C[BWT[i]] + rank_{BWT[i]}(i).
NaivePermutation naive_lf(std::span<const std::uint8_t> bwt);
NaivePermutation naive_fl(std::span<const std::uint8_t> bwt);
// phi(SA[i]) = SA[i-1 mod n]; inverse: phi^-1(SA[i]) = SA[i+1 mod n].
NaivePermutation naive_phi(std::span<const std::uint64_t> sa, bool inverse);
// DA[i] = rank of the predecessor of SA[i] among the document starts.
std::vector<std::uint64_t> naive_da(std::span<const std::uint64_t> sa,
                                    std::span<const std::uint64_t> doc_starts);

NaivePermutation inverse(std::span<const std::uint64_t> pi);
bool is_bijection(std::span<const std::uint64_t> pi);

// Positions i with i == 0 or pi(i-1) != pi(i) - 1.
std::vector<std::uint64_t> naive_runs(std::span<const std::uint64_t> pi);

// Fast forwards of the query at position i: interval starts s with
// start[dest_rank[j]] < s <= pi(i), counted by scanning every start.
std::uint64_t simulate_fast_forwards(const IntervalTable& table, std::uint64_t i);

} // namespace runmove::oracle
