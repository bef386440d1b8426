#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "runmove/move_table.hpp"
#include "runmove/splitting.hpp"

namespace runmove {

inline constexpr std::uint8_t kSentinel = 0x00;

struct BwtRun {
    std::uint8_t symbol = 0;
    std::uint64_t length = 0;

    bool operator==(const BwtRun&) const = default;
};

/// Run-length encoded BWT of a sentinel-terminated text.
class Rlbwt {
public:
    Rlbwt() = default;
    // Validates: positive lengths, adjacent runs differ, exactly one sentinel.
    explicit Rlbwt(std::vector<BwtRun> runs);
    static Rlbwt from_bwt(std::span<const std::uint8_t> bwt);

    const std::vector<BwtRun>& runs() const noexcept { return runs_; }
    std::uint64_t size() const noexcept { return n_; }
    std::uint64_t run_count() const noexcept { return runs_.size(); }
    unsigned sigma() const noexcept { return sigma_; }
    const std::array<std::uint64_t, 256>& char_counts() const noexcept { return counts_; }
    // C-array: number of symbols smaller than c.
    std::array<std::uint64_t, 256> first_positions() const noexcept;

    std::vector<std::uint8_t> expand() const;

    bool operator==(const Rlbwt& other) const { return runs_ == other.runs_; }

private:
    std::vector<BwtRun> runs_;
    std::uint64_t n_ = 0;
    unsigned sigma_ = 0;
    std::array<std::uint64_t, 256> counts_{};
};

// Binary format: "RLBW", version byte, n (u64 LE), r (u64 LE), r x (symbol u8, length u64 LE).
void write_rlbwt(std::ostream& out, const Rlbwt& rl);
Rlbwt read_rlbwt(std::istream& in);
// Debug text format: one "<symbol hex> <length>" pair per line.
void write_rlbwt_text(std::ostream& out, const Rlbwt& rl);
Rlbwt read_rlbwt_text(std::istream& in);

struct BwtBuild {
    std::vector<std::uint8_t> text; // input plus the trailing sentinel
    std::vector<std::uint64_t> sa;
    Rlbwt rlbwt;
};

/// Desk-scale construction. Appends the sentinel; rejects empty input and embedded
/// sentinels. A single trailing sentinel is accepted as already terminated.
BwtBuild build_bwt(std::span<const std::uint8_t> text);
BwtBuild build_bwt(std::string_view text);

// Suffix array of a sentinel-terminated text by prefix doubling with comparison sorts.
std::vector<std::uint64_t> suffix_array(std::span<const std::uint8_t> text);

// LF (and FL) move structures in O(r) without comparison sorting. Both carry a
// per-interval "sym" column holding the run symbol.
IntervalTable build_lf(const Rlbwt& rl, Mode mode = Mode::absolute);
IntervalTable build_fl(const Rlbwt& rl, Mode mode = Mode::absolute);

/// SA values at the first (head) and last (tail) row of every BWT run.
struct SaSamples {
    std::vector<std::uint64_t> head;
    std::vector<std::uint64_t> tail;
    // Filled by sample_docs: document of each sample.
    std::vector<std::uint64_t> head_doc;
    std::vector<std::uint64_t> tail_doc;
};

/// Sorted document start positions in the text; first element 0.
class DocBounds {
public:
    DocBounds() = default;
    DocBounds(std::vector<std::uint64_t> starts, std::uint64_t n);

    std::span<const std::uint64_t> starts() const noexcept { return starts_; }
    std::uint64_t count() const noexcept { return starts_.size(); }
    // Rank of the predecessor of a text position.
    std::uint64_t doc_of(std::uint64_t pos) const noexcept;

private:
    std::vector<std::uint64_t> starts_;
};

DocBounds read_doc_bounds(std::istream& in, std::uint64_t n);

// One full LF traversal from row 0 (SA value n-1) collecting run-boundary samples.
SaSamples sample_sa(const Rlbwt& rl);

/// phi (or phi^-1) built by a single n-step LF traversal: interval starts appear in
/// descending order, so ranks and destinations are assigned without sorting.
/// O(n) time, O(r) working space.
struct PhiBuild {
    IntervalTable table;
    SaSamples samples;
};
PhiBuild build_phi_via_lf(const Rlbwt& rl, bool inverse, Mode mode = Mode::absolute);

// Same output contract, resolving destinations by sorting the sampled images.
IntervalTable build_phi_sorted(const Rlbwt& rl, bool inverse, Mode mode = Mode::absolute);

// Annotates every sample with the document containing it.
SaSamples sample_docs(SaSamples samples, const DocBounds& bounds);

} // namespace runmove
