#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "runmove/move_table.hpp"

namespace runmove {

/// Length-cap factor c as an exact rational num/den. num == 0 means "no capping".
struct CapFactor {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool enabled() const noexcept { return num != 0; }

    // Accepts "p/q", an integer, or a plain decimal such as "0.5".
    static CapFactor parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const CapFactor&) const = default;
};

struct SplitConfig {
    CapFactor cap{8, 1};
    std::uint64_t alpha = 0; // 0 disables balancing
};

// L = max(1, ceil(c * n / r)) computed in integer arithmetic.
std::uint64_t cap_length(std::uint64_t n, std::uint64_t r, CapFactor c);

/// Splits every interval longer than L into pieces of length L (remainder last).
/// L uses the table's source run count, so re-capping a split table is a no-op.
/// Runs in time linear in the output size.
IntervalTable length_cap(const IntervalTable& table, CapFactor c);

/// Splits intervals until every output interval contains fewer than 2*alpha
/// interval starts. Throws invalid-parameter for alpha < 2.
IntervalTable balance(const IntervalTable& table, std::uint64_t alpha);

// length_cap then balance, each skipped when disabled.
IntervalTable apply_splits(const IntervalTable& table, const SplitConfig& cfg);

// Adds interval starts at the given positions (already-present starts are ignored).
// Extra columns are copied to every piece.
IntervalTable split_at(const IntervalTable& table, std::span<const std::uint64_t> positions);

} // namespace runmove
