#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "runmove/bitpack.hpp"
#include "runmove/error.hpp"

namespace runmove {

// absolute stores interval starts; relative stores interval lengths.
enum class Mode : std::uint8_t { absolute = 0, relative = 1 };
enum class Search : std::uint8_t { linear = 0, exponential = 1 };
enum class PermKind : std::uint8_t { generic = 0, lf = 1, fl = 2, phi = 3, phi_inv = 4 };

const char* to_string(Mode mode) noexcept;
const char* to_string(Search search) noexcept;
const char* to_string(PermKind kind) noexcept;

// A position expressed as (interval rank, offset inside that interval).
struct MoveCursor {
    std::uint64_t interval = 0;
    std::uint64_t offset = 0;

    bool operator==(const MoveCursor&) const = default;
};

struct MoveStep {
    MoveCursor cursor;
    std::uint64_t fast_forwards = 0;
    // Comparisons against interval starts; only counted by exponential search.
    std::uint64_t probes = 0;
};

// A named per-interval column carried alongside the move structure.
struct ExtraColumn {
    std::string name;
    std::vector<std::uint64_t> values;
};

/// A runny permutation given by its runs: run t covers [starts[t], starts[t+1]) and
/// maps starts[t] + k to images[t] + k.
struct RunPermutation {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> starts;
    std::vector<std::uint64_t> images;

    // Detects the maximal runs of a full permutation array. Throws invalid-permutation
    // if pi is not a bijection on [0, n).
    static RunPermutation from_array(std::span<const std::uint64_t> pi);

    std::uint64_t run_count() const noexcept { return starts.size(); }
    std::uint64_t length(std::size_t t) const noexcept {
        return (t + 1 < starts.size() ? starts[t + 1] : n) - starts[t];
    }

    // Checks that the runs partition [0, n) and their images do too.
    void validate() const;

    // Full permutation array; intended for oracles and tests.
    std::vector<std::uint64_t> expand() const;
};

/// Intervals whose destinations have already been resolved against the start set:
/// interval j maps its first position to starts[dest_rank[j]] + dest_offset[j].
struct RankedRuns {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> starts;
    std::vector<std::uint64_t> dest_rank;
    std::vector<std::uint64_t> dest_offset;
    std::vector<ExtraColumn> extras;
};

// Resolves destinations by sorting the images, O(r log r).
RankedRuns rank_runs(const RunPermutation& runs, std::vector<ExtraColumn> extras = {});

// Splitting history carried with a table (and into its file header).
struct SplitMeta {
    std::uint64_t source_runs = 0; // r of the permutation before any splitting
    std::uint64_t cap_num = 0;     // length-cap factor c = cap_num / cap_den; 0 = uncapped
    std::uint64_t cap_den = 1;
    std::uint64_t cap_length = 0; // L, 0 when uncapped
    std::uint64_t alpha = 0;      // balancing parameter, 0 when unbalanced

    bool operator==(const SplitMeta&) const = default;
};

class IntervalTable {
public:
    static constexpr std::size_t kPositionColumn = 0; // "start" or "len"
    static constexpr std::size_t kOffsetColumn = 1;
    static constexpr std::size_t kRankColumn = 2;
    static constexpr std::size_t kFirstExtraColumn = 3;
    // Prefix-sum sampling rate for relative-mode position reconstruction.
    static constexpr std::uint64_t kSampleRate = 64;

    IntervalTable() = default;

    // Unbalanced move structure of a full permutation array.
    static IntervalTable from_permutation(std::span<const std::uint64_t> pi,
                                          Mode mode = Mode::absolute);
    static IntervalTable from_runs(const RunPermutation& runs, Mode mode,
                                   PermKind kind = PermKind::generic,
                                   std::vector<ExtraColumn> extras = {});
    // Packs resolved intervals with minimum column widths.
    static IntervalTable build(const RankedRuns& ranked, Mode mode,
                               PermKind kind = PermKind::generic, SplitMeta meta = {});
    // Wraps an already packed matrix (load path). Checks column layout, not contents.
    static IntervalTable from_matrix(std::uint64_t n, Mode mode, PermKind kind, SplitMeta meta,
                                     PackedMatrix matrix);

    std::uint64_t domain_size() const noexcept { return n_; }
    std::uint64_t interval_count() const noexcept { return rows_.row_count(); }
    Mode mode() const noexcept { return mode_; }
    PermKind kind() const noexcept { return kind_; }
    const SplitMeta& meta() const noexcept { return meta_; }
    std::uint64_t max_length() const noexcept { return max_len_; }
    const PackedMatrix& matrix() const noexcept { return rows_; }

    IntervalTable with_meta(SplitMeta meta) const;
    IntervalTable with_kind(PermKind kind) const;
    // Replaces all extra columns; each must have one value per interval.
    IntervalTable with_extras(std::vector<ExtraColumn> extras) const;
    std::vector<ExtraColumn> extras() const;
    std::optional<std::size_t> column(std::string_view name) const noexcept {
        return rows_.column_index(name);
    }

    std::uint64_t length(std::uint64_t j) const noexcept {
        if (mode_ == Mode::relative) return rows_.get_unchecked(j, kPositionColumn);
        const std::uint64_t next =
            j + 1 < interval_count() ? rows_.get_unchecked(j + 1, kPositionColumn) : n_;
        return next - rows_.get_unchecked(j, kPositionColumn);
    }
    // O(1) in absolute mode, O(kSampleRate) in relative mode.
    std::uint64_t start(std::uint64_t j) const noexcept;
    std::uint64_t dest_rank(std::uint64_t j) const noexcept {
        return rows_.get_unchecked(j, kRankColumn);
    }
    std::uint64_t dest_offset(std::uint64_t j) const noexcept {
        return rows_.get_unchecked(j, kOffsetColumn);
    }
    std::uint64_t value(std::uint64_t j, std::size_t col) const noexcept {
        return rows_.get_unchecked(j, col);
    }

    // One move query. Throws bounds on an invalid cursor and unsupported-mode for
    // exponential search on a relative table.
    MoveStep move(MoveCursor cur, Search search = Search::linear) const;

    MoveStep move_linear(MoveCursor cur) const noexcept {
        std::uint64_t q = dest_rank(cur.interval);
        std::uint64_t ff = 0;
        if (mode_ == Mode::relative) {
            std::uint64_t off = dest_offset(cur.interval) + cur.offset;
            for (std::uint64_t len; off >= (len = rows_.get_unchecked(q, kPositionColumn));) {
                off -= len;
                ++q;
                ++ff;
            }
            return {{q, off}, ff, 0};
        }
        const std::uint64_t r = interval_count();
        const std::uint64_t pos =
            abs_start(q) + dest_offset(cur.interval) + cur.offset;
        while (q + 1 < r && abs_start(q + 1) <= pos) {
            ++q;
            ++ff;
        }
        return {{q, pos - abs_start(q)}, ff, 0};
    }

    // Galloping search for the predecessor; absolute mode only (unchecked).
    MoveStep move_exponential(MoveCursor cur) const noexcept {
        const std::uint64_t r = interval_count();
        const std::uint64_t q0 = dest_rank(cur.interval);
        const std::uint64_t pos = abs_start(q0) + dest_offset(cur.interval) + cur.offset;
        std::uint64_t probes = 1;
        if (q0 + 1 >= r || abs_start(q0 + 1) > pos) {
            if (q0 + 1 >= r) probes = 0;
            return {{q0, pos - abs_start(q0)}, 0, probes};
        }
        // Invariant: start[lo] <= pos, and hi is past the answer (start[hi] > pos or hi >= r).
        std::uint64_t lo = q0 + 1;
        std::uint64_t step = 2;
        std::uint64_t hi = r;
        for (;;) {
            const std::uint64_t probe = q0 + step;
            if (probe >= r) break;
            ++probes;
            if (abs_start(probe) > pos) {
                hi = probe;
                break;
            }
            lo = probe;
            step <<= 1;
        }
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            ++probes;
            if (abs_start(mid) <= pos)
                lo = mid;
            else
                hi = mid;
        }
        return {{lo, pos - abs_start(lo)}, lo - q0, probes};
    }

    MoveCursor cursor_of(std::uint64_t i) const;
    std::uint64_t position_of(MoveCursor cur) const;

    // pi(i) by predecessor search over the starts; absolute mode only.
    std::uint64_t eval_abs(std::uint64_t i) const;
    // pi(i) in either mode.
    std::uint64_t evaluate(std::uint64_t i) const;
    // pi over the whole domain in O(n) time.
    std::vector<std::uint64_t> evaluate_all() const;

    RankedRuns ranked_runs() const;
    RunPermutation runs() const;
    std::vector<std::uint64_t> starts() const;

    // Structural validation: tiling, destination bounds, bijectivity, minimal widths.
    // Throws invalid-permutation with a description of the first violation.
    void validate() const;

    bool operator==(const IntervalTable& other) const;

private:
    std::uint64_t abs_start(std::uint64_t j) const noexcept {
        return rows_.get_unchecked(j, kPositionColumn);
    }
    void check_cursor(MoveCursor cur) const;
    void rebuild_derived();

    std::uint64_t n_ = 0;
    Mode mode_ = Mode::absolute;
    PermKind kind_ = PermKind::generic;
    SplitMeta meta_;
    std::uint64_t max_len_ = 0;
    PackedMatrix rows_;
    std::vector<std::uint64_t> samples_; // relative mode: start of every kSampleRate-th interval
};

} // namespace runmove
