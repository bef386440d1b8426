#include "runmove/traversal.hpp"

#include <algorithm>

#include "runmove/splitting.hpp"

namespace runmove {

namespace {

constexpr std::size_t kBlockBytes = 1 << 16;

template <Search S>
MoveStep step(const IntervalTable& t, MoveCursor cur) noexcept {
    if constexpr (S == Search::exponential)
        return t.move_exponential(cur);
    else
        return t.move_linear(cur);
}

void check_search(const IntervalTable& t, Search search) {
    if (search == Search::exponential && t.mode() != Mode::absolute)
        throw Error(Errc::unsupported_mode, "exponential search requires absolute mode");
}

std::size_t require_column(const IntervalTable& t, const char* name) {
    const auto col = t.column(name);
    if (!col) throw Error(Errc::missing_column, std::string("table has no '") + name + "' column");
    return *col;
}

// Drives `count` chained queries, calling emit(cursor) before each step. The last
// emitted cursor is not advanced, so n emissions cost n-1 queries.
template <Search S, class Emit>
TraversalStats chain(const IntervalTable& t, MoveCursor cur, std::uint64_t count, Emit&& emit) {
    TraversalStats stats;
    for (std::uint64_t i = 0; i < count; ++i) {
        emit(cur);
        if (i + 1 == count) break;
        const MoveStep s = step<S>(t, cur);
        stats.record(s);
        cur = s.cursor;
    }
    return stats;
}

template <class Emit>
TraversalStats chain(const IntervalTable& t, MoveCursor cur, std::uint64_t count, Search search,
                     Emit&& emit) {
    check_search(t, search);
    if (search == Search::exponential)
        return chain<Search::exponential>(t, cur, count, emit);
    return chain<Search::linear>(t, cur, count, emit);
}

} // namespace

// ---------------------------------------------------------------------------
// Stats

void TraversalStats::record(const MoveStep& s) {
    ++steps;
    total_fast_forwards += s.fast_forwards;
    max_fast_forwards = std::max(max_fast_forwards, s.fast_forwards);
    total_probes += s.probes;
    max_probes = std::max(max_probes, s.probes);
    if (histogram.size() <= s.fast_forwards) histogram.resize(s.fast_forwards + 1, 0);
    ++histogram[s.fast_forwards];
}

bool TraversalStats::consistent() const {
    std::uint64_t count = 0, weighted = 0;
    for (std::size_t f = 0; f < histogram.size(); ++f) {
        count += histogram[f];
        weighted += f * histogram[f];
    }
    return count == steps && weighted == total_fast_forwards;
}

// ---------------------------------------------------------------------------
// Sinks

void TextRestoringSink::put(std::uint8_t byte) {
    if (seen_ >= n_) throw Error(Errc::bounds, "more symbols than the text length");
    text[seen_ + 1 == n_ ? n_ - 1 : n_ - 2 - seen_] = byte;
    ++seen_;
}

TextRestoringFileSink::TextRestoringFileSink(const std::string& path, std::uint64_t n) : n_(n) {
    // Create/truncate, then reopen for positioned writes.
    { std::ofstream create(path, std::ios::binary | std::ios::trunc); }
    file_.open(path, std::ios::binary | std::ios::in | std::ios::out);
    if (!file_) throw Error(Errc::io, "cannot open " + path + " for writing");
    block_.reserve(kBlockBytes);
}

void TextRestoringFileSink::put(std::uint8_t byte) {
    if (seen_ >= n_) throw Error(Errc::bounds, "more symbols than the text length");
    if (seen_ + 1 == n_) {
        flush_block();
        file_.seekp(static_cast<std::streamoff>(n_ - 1));
        file_.put(static_cast<char>(byte));
        ++seen_;
        return;
    }
    block_.push_back(byte);
    ++seen_;
    if (block_.size() == kBlockBytes) flush_block();
}

void TextRestoringFileSink::flush_block() {
    if (block_.empty()) return;
    // block_ holds items seen_-size .. seen_-1, destined for descending positions.
    // Never called with the final sentinel in the block.
    const std::uint64_t first_item = seen_ - block_.size();
    const std::uint64_t lowest = n_ - 2 - (first_item + block_.size() - 1);
    std::reverse(block_.begin(), block_.end());
    file_.seekp(static_cast<std::streamoff>(lowest));
    file_.write(reinterpret_cast<const char*>(block_.data()),
                static_cast<std::streamsize>(block_.size()));
    block_.clear();
}

void TextRestoringFileSink::finish() {
    flush_block();
    file_.flush();
    if (!file_ || seen_ != n_) throw Error(Errc::io, "text output incomplete");
}

FileValueSink::FileValueSink(const std::string& path) : file_(path, std::ios::binary | std::ios::trunc) {
    if (!file_) throw Error(Errc::io, "cannot open " + path + " for writing");
    buffer_.reserve(kBlockBytes);
}

void FileValueSink::put(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>(value >> (8 * i)));
    if (buffer_.size() >= kBlockBytes) {
        file_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
        buffer_.clear();
    }
}

void FileValueSink::finish() {
    file_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
    file_.flush();
    if (!file_) throw Error(Errc::io, "failed writing value stream");
}

// ---------------------------------------------------------------------------
// Inversion and enumeration

TraversalStats invert_bwt(const IntervalTable& lf, ByteSink& sink, Search search) {
    const std::size_t sym = require_column(lf, "sym");
    TraversalStats stats = chain(lf, MoveCursor{0, 0}, lf.domain_size(), search, [&](MoveCursor c) {
        sink.put(static_cast<std::uint8_t>(lf.value(c.interval, sym)));
    });
    sink.finish();
    return stats;
}

std::vector<std::uint8_t> recover_text(const IntervalTable& lf) {
    TextRestoringSink sink(lf.domain_size());
    invert_bwt(lf, sink);
    return std::move(sink.text);
}

TraversalStats enumerate_sa(const IntervalTable& phi_inv, std::uint64_t first_sa, ValueSink& sink,
                            Search search) {
    const MoveCursor first = phi_inv.cursor_of(first_sa);
    TraversalStats stats;
    if (phi_inv.mode() == Mode::absolute) {
        stats = chain(phi_inv, first, phi_inv.domain_size(), search, [&](MoveCursor c) {
            sink.put(phi_inv.start(c.interval) + c.offset);
        });
    } else {
        stats = chain(phi_inv, first, phi_inv.domain_size(), search,
                      [&](MoveCursor c) { sink.put(phi_inv.position_of(c)); });
    }
    sink.finish();
    return stats;
}

IntervalTable split_for_documents(const IntervalTable& table, const DocBounds& bounds) {
    const std::vector<std::uint64_t> starts = table.starts();
    const auto docs = bounds.starts();
    std::vector<std::uint64_t> cuts;
    std::size_t b = 0;
    for (std::size_t j = 0; j < starts.size(); ++j) {
        const std::uint64_t end = starts[j] + table.length(j);
        while (b < docs.size() && docs[b] <= starts[j]) ++b;
        // Keep the first internal boundary, cut at every later one.
        for (std::size_t k = b + 1; k < docs.size() && docs[k] < end; ++k) cuts.push_back(docs[k]);
    }
    return cuts.empty() ? table : split_at(table, cuts);
}

IntervalTable with_doc_columns(const IntervalTable& table, const DocBounds& bounds) {
    if (bounds.count() == 0) throw Error(Errc::invalid_input, "document bounds are empty");
    const std::vector<std::uint64_t> starts = table.starts();
    const auto docs = bounds.starts();
    const std::uint64_t r = starts.size();
    ExtraColumn doc{"doc", std::vector<std::uint64_t>(r)};
    ExtraColumn doc_run{"doc_run", std::vector<std::uint64_t>(r)};
    std::size_t b = 0; // docs[b] is the first boundary > start
    for (std::uint64_t j = 0; j < r; ++j) {
        const std::uint64_t len = table.length(j);
        while (b < docs.size() && docs[b] <= starts[j]) ++b;
        doc.values[j] = b - 1;
        doc_run.values[j] = b < docs.size() ? std::min(docs[b] - starts[j], len) : len;
        if (b + 1 < docs.size() && docs[b + 1] < starts[j] + len)
            throw Error(Errc::invalid_input, "interval " + std::to_string(j) +
                                                 " spans several document boundaries");
    }
    std::vector<ExtraColumn> extras;
    for (auto& e : table.extras())
        if (e.name != "doc" && e.name != "doc_run") extras.push_back(std::move(e));
    extras.push_back(std::move(doc));
    extras.push_back(std::move(doc_run));
    return table.with_extras(std::move(extras));
}

TraversalStats enumerate_da(const IntervalTable& phi_inv, std::uint64_t first_sa, ValueSink& sink,
                            Search search) {
    const std::size_t doc = require_column(phi_inv, "doc");
    const std::size_t run = require_column(phi_inv, "doc_run");
    const MoveCursor first = phi_inv.cursor_of(first_sa);
    TraversalStats stats = chain(phi_inv, first, phi_inv.domain_size(), search, [&](MoveCursor c) {
        const std::uint64_t d = phi_inv.value(c.interval, doc);
        sink.put(c.offset >= phi_inv.value(c.interval, run) ? d + 1 : d);
    });
    sink.finish();
    return stats;
}

namespace {

template <Search S>
CountedTraversal counted(const IntervalTable& table, MoveCursor cur, std::uint64_t steps) {
    CountedTraversal out;
    for (std::uint64_t i = 0; i < steps; ++i) {
        const MoveStep s = step<S>(table, cur);
        out.stats.record(s);
        cur = s.cursor;
    }
    out.end = cur;
    return out;
}

} // namespace

CountedTraversal traverse_counted(const IntervalTable& table, MoveCursor start, std::uint64_t steps,
                                  Search search) {
    check_search(table, search);
    table.position_of(start); // validates the cursor
    if (search == Search::exponential) return counted<Search::exponential>(table, start, steps);
    return counted<Search::linear>(table, start, steps);
}

bool is_single_cycle(const IntervalTable& table) {
    MoveCursor cur{0, 0};
    for (std::uint64_t i = 1; i <= table.domain_size(); ++i) {
        cur = table.move_linear(cur).cursor;
        if (cur == MoveCursor{0, 0}) return i == table.domain_size();
    }
    return false;
}

} // namespace runmove
