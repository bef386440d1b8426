#pragma once

// Deterministic synthetic inputs for tests, benchmarks and the CLI.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "runmove/move_table.hpp"

namespace runmove::synthetic {

// Uniform text over the first `sigma` letters starting at 'a'.
std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma);

// `copies` concatenated copies of a random seed, each copy with `mutations`
// random single-letter substitutions.
std::string repetitive_text(std::mt19937_64& rng, std::size_t seed_len, std::size_t copies,
                            std::size_t mutations, unsigned sigma = 4);

// Random permutation of [0, n) made of (at most) r contiguously permuted runs.
RunPermutation random_runny_permutation(std::mt19937_64& rng, std::uint64_t n, std::uint64_t r);

/// Single-cycle permutation where one long interval's output interval contains
/// every other interval start: [0, n-u) shifts up by u, and each of the top u
/// positions maps back into [0, u) so that the chains join into one cycle.
/// Requires 0 < u <= n - u.
std::vector<std::uint64_t> adversarial_permutation(std::uint64_t n, std::uint64_t u,
                                                   std::uint64_t seed);

} // namespace runmove::synthetic
