#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "runmove/move_table.hpp"
#include "runmove/rlbwt.hpp"

namespace runmove {

/// Fast-forward accounting over a sequence of move queries.
struct TraversalStats {
    std::uint64_t steps = 0;
    std::uint64_t total_fast_forwards = 0;
    std::uint64_t max_fast_forwards = 0;
    std::uint64_t total_probes = 0;
    std::uint64_t max_probes = 0;
    std::vector<std::uint64_t> histogram; // histogram[f] = queries with f fast forwards

    void record(const MoveStep& step);
    // sum(histogram) == steps and sum(f * histogram[f]) == total_fast_forwards.
    bool consistent() const;
};

class ByteSink {
public:
    virtual ~ByteSink() = default;
    virtual void put(std::uint8_t byte) = 0;
    virtual void finish() {}
};

class ValueSink {
public:
    virtual ~ValueSink() = default;
    virtual void put(std::uint64_t value) = 0;
    virtual void finish() {}
};

class MemoryByteSink final : public ByteSink {
public:
    void put(std::uint8_t byte) override { bytes.push_back(byte); }
    std::vector<std::uint8_t> bytes;
};

class MemoryValueSink final : public ValueSink {
public:
    void put(std::uint64_t value) override { values.push_back(value); }
    std::vector<std::uint64_t> values;
};

// Turns the reverse-order inversion stream of an n-symbol text back into text
// order: item t < n-1 lands at n-2-t, the final sentinel at n-1.
class TextRestoringSink final : public ByteSink {
public:
    explicit TextRestoringSink(std::uint64_t n) : text(n), n_(n) {}
    void put(std::uint8_t byte) override;
    std::vector<std::uint8_t> text;

private:
    std::uint64_t n_;
    std::uint64_t seen_ = 0;
};

// File variant of TextRestoringSink; writes fixed-size blocks backwards.
class TextRestoringFileSink final : public ByteSink {
public:
    TextRestoringFileSink(const std::string& path, std::uint64_t n);
    void put(std::uint8_t byte) override;
    void finish() override;

private:
    void flush_block();

    std::fstream file_;
    std::uint64_t n_;
    std::uint64_t seen_ = 0;
    std::vector<std::uint8_t> block_; // items in emission order
};

// Raw 64-bit little-endian values, buffered.
class FileValueSink final : public ValueSink {
public:
    explicit FileValueSink(const std::string& path);
    void put(std::uint64_t value) override;
    void finish() override;

private:
    std::ofstream file_;
    std::vector<char> buffer_;
};

/// Inverts the BWT with n chained LF queries from cursor (0,0), emitting the run
/// symbol of every visited interval. The stream is the text reversed with the
/// sentinel last. Requires a "sym" column (missing-column otherwise).
TraversalStats invert_bwt(const IntervalTable& lf, ByteSink& sink,
                          Search search = Search::linear);

// Convenience: recovered text including the trailing sentinel.
std::vector<std::uint8_t> recover_text(const IntervalTable& lf);

/// Emits SA[0..n-1] by chaining phi^-1 from SA[0] = first_sa (n-1 for a
/// sentinel-terminated text). Chaining phi instead emits the reverse order.
TraversalStats enumerate_sa(const IntervalTable& phi_inv, std::uint64_t first_sa, ValueSink& sink,
                            Search search = Search::linear);

// Splits intervals so that each contains at most one document boundary strictly
// inside it. Later splits keep the property.
IntervalTable split_for_documents(const IntervalTable& table, const DocBounds& bounds);

// Attaches "doc" (document of the interval start) and "doc_run" (distance from the
// start to the next document boundary, capped at the interval length). The values
// depend on interval starts, so attach them after all splitting.
IntervalTable with_doc_columns(const IntervalTable& table, const DocBounds& bounds);

/// Emits DA[0..n-1] along the same chain as enumerate_sa, resolving each offset
/// from the per-interval doc columns.
TraversalStats enumerate_da(const IntervalTable& phi_inv, std::uint64_t first_sa, ValueSink& sink,
                            Search search = Search::linear);

struct CountedTraversal {
    TraversalStats stats;
    MoveCursor end;
};

// `steps` chained move queries from `start`, aggregating fast-forward stats.
CountedTraversal traverse_counted(const IntervalTable& table, MoveCursor start, std::uint64_t steps,
                                  Search search = Search::linear);

// True if n chained queries from (0,0) first return to (0,0) at step n.
bool is_single_cycle(const IntervalTable& table);

} // namespace runmove
