#include "runmove/move_table.hpp"

#include <algorithm>
#include <numeric>

namespace runmove {

const char* to_string(Mode mode) noexcept {
    return mode == Mode::absolute ? "abs" : "rel";
}

const char* to_string(Search search) noexcept {
    return search == Search::linear ? "linear" : "exp";
}

const char* to_string(PermKind kind) noexcept {
    switch (kind) {
    case PermKind::generic: return "generic";
    case PermKind::lf: return "lf";
    case PermKind::fl: return "fl";
    case PermKind::phi: return "phi";
    case PermKind::phi_inv: return "phi-inv";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// RunPermutation

RunPermutation RunPermutation::from_array(std::span<const std::uint64_t> pi) {
    const std::uint64_t n = pi.size();
    if (n == 0) throw Error(Errc::invalid_permutation, "empty permutation");
    std::vector<bool> seen(n, false);
    for (std::uint64_t v : pi) {
        if (v >= n || seen[v])
            throw Error(Errc::invalid_permutation,
                        "value " + std::to_string(v) + " is out of range or repeated");
        seen[v] = true;
    }
    RunPermutation out;
    out.n = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i == 0 || pi[i - 1] + 1 != pi[i]) {
            out.starts.push_back(i);
            out.images.push_back(pi[i]);
        }
    }
    return out;
}

void RunPermutation::validate() const {
    if (n == 0) throw Error(Errc::invalid_permutation, "empty domain");
    if (starts.empty() || starts.size() != images.size())
        throw Error(Errc::invalid_permutation, "starts and images must be non-empty and paired");
    if (starts[0] != 0) throw Error(Errc::invalid_permutation, "first start must be 0");
    for (std::size_t t = 1; t < starts.size(); ++t)
        if (starts[t] <= starts[t - 1] || starts[t] >= n)
            throw Error(Errc::invalid_permutation, "starts must be strictly increasing below n");
    std::vector<std::size_t> order(starts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return images[a] < images[b]; });
    std::uint64_t expect = 0;
    for (std::size_t t : order) {
        if (images[t] != expect)
            throw Error(Errc::invalid_permutation, "images do not tile [0, n)");
        expect += length(t);
    }
}

std::vector<std::uint64_t> RunPermutation::expand() const {
    std::vector<std::uint64_t> pi(n);
    for (std::size_t t = 0; t < starts.size(); ++t)
        for (std::uint64_t k = 0; k < length(t); ++k) pi[starts[t] + k] = images[t] + k;
    return pi;
}

RankedRuns rank_runs(const RunPermutation& runs, std::vector<ExtraColumn> extras) {
    runs.validate();
    const std::size_t r = runs.starts.size();
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return runs.images[a] < runs.images[b]; });
    RankedRuns out;
    out.n = runs.n;
    out.starts = runs.starts;
    out.dest_rank.resize(r);
    out.dest_offset.resize(r);
    std::size_t p = 0;
    for (std::size_t t : order) {
        const std::uint64_t y = runs.images[t];
        while (p + 1 < r && runs.starts[p + 1] <= y) ++p;
        out.dest_rank[t] = p;
        out.dest_offset[t] = y - runs.starts[p];
    }
    out.extras = std::move(extras);
    return out;
}

// ---------------------------------------------------------------------------
// IntervalTable construction

IntervalTable IntervalTable::from_permutation(std::span<const std::uint64_t> pi, Mode mode) {
    return from_runs(RunPermutation::from_array(pi), mode);
}

IntervalTable IntervalTable::from_runs(const RunPermutation& runs, Mode mode, PermKind kind,
                                       std::vector<ExtraColumn> extras) {
    SplitMeta meta;
    meta.source_runs = runs.run_count();
    return build(rank_runs(runs, std::move(extras)), mode, kind, meta);
}

IntervalTable IntervalTable::build(const RankedRuns& ranked, Mode mode, PermKind kind,
                                   SplitMeta meta) {
    const std::size_t r = ranked.starts.size();
    if (ranked.n == 0 || r == 0) throw Error(Errc::invalid_permutation, "empty table");
    if (ranked.dest_rank.size() != r || ranked.dest_offset.size() != r)
        throw Error(Errc::invalid_permutation, "column length mismatch");
    for (const auto& e : ranked.extras)
        if (e.values.size() != r)
            throw Error(Errc::invalid_spec, "extra column '" + e.name + "' has wrong length");

    std::vector<std::uint64_t> lens(r);
    for (std::size_t j = 0; j < r; ++j)
        lens[j] = (j + 1 < r ? ranked.starts[j + 1] : ranked.n) - ranked.starts[j];

    auto max_of = [](const std::vector<std::uint64_t>& v) {
        return v.empty() ? std::uint64_t{0} : *std::max_element(v.begin(), v.end());
    };
    std::vector<ColumnSpec> cols;
    if (mode == Mode::absolute)
        cols.push_back({"start", min_width(ranked.starts.back())});
    else
        cols.push_back({"len", min_width(max_of(lens))});
    cols.push_back({"offset", min_width(max_of(ranked.dest_offset))});
    cols.push_back({"rank", min_width(max_of(ranked.dest_rank))});
    for (const auto& e : ranked.extras) {
        if (e.name == "start" || e.name == "len" || e.name == "offset" || e.name == "rank")
            throw Error(Errc::invalid_spec, "extra column name '" + e.name + "' is reserved");
        cols.push_back({e.name, min_width(max_of(e.values))});
    }

    PackedMatrix m(std::move(cols), r);
    for (std::size_t j = 0; j < r; ++j) {
        m.set_unchecked(j, kPositionColumn, mode == Mode::absolute ? ranked.starts[j] : lens[j]);
        m.set_unchecked(j, kOffsetColumn, ranked.dest_offset[j]);
        m.set_unchecked(j, kRankColumn, ranked.dest_rank[j]);
        for (std::size_t e = 0; e < ranked.extras.size(); ++e)
            m.set_unchecked(j, kFirstExtraColumn + e, ranked.extras[e].values[j]);
    }
    if (meta.source_runs == 0) meta.source_runs = r;
    return from_matrix(ranked.n, mode, kind, meta, std::move(m));
}

IntervalTable IntervalTable::from_matrix(std::uint64_t n, Mode mode, PermKind kind,
                                         SplitMeta meta, PackedMatrix matrix) {
    const auto& cols = matrix.columns();
    const char* pos_name = mode == Mode::absolute ? "start" : "len";
    if (cols.size() < kFirstExtraColumn || cols[kPositionColumn].name != pos_name ||
        cols[kOffsetColumn].name != "offset" || cols[kRankColumn].name != "rank")
        throw Error(Errc::invalid_spec, std::string("table columns must begin with ") + pos_name +
                                            ", offset, rank");
    if (n == 0 || matrix.row_count() == 0 || matrix.row_count() > n)
        throw Error(Errc::invalid_spec, "interval count must be in 1..n");
    IntervalTable t;
    t.n_ = n;
    t.mode_ = mode;
    t.kind_ = kind;
    t.meta_ = meta;
    t.rows_ = std::move(matrix);
    t.rebuild_derived();
    return t;
}

void IntervalTable::rebuild_derived() {
    const std::uint64_t r = interval_count();
    max_len_ = 0;
    samples_.clear();
    std::uint64_t pos = 0;
    for (std::uint64_t j = 0; j < r; ++j) {
        if (mode_ == Mode::relative && j % kSampleRate == 0) samples_.push_back(pos);
        const std::uint64_t len = length(j);
        max_len_ = std::max(max_len_, len);
        pos += len;
    }
}

IntervalTable IntervalTable::with_meta(SplitMeta meta) const {
    IntervalTable t = *this;
    t.meta_ = meta;
    return t;
}

IntervalTable IntervalTable::with_kind(PermKind kind) const {
    IntervalTable t = *this;
    t.kind_ = kind;
    return t;
}

IntervalTable IntervalTable::with_extras(std::vector<ExtraColumn> extras) const {
    RankedRuns ranked = ranked_runs();
    ranked.extras = std::move(extras);
    return build(ranked, mode_, kind_, meta_);
}

std::vector<ExtraColumn> IntervalTable::extras() const {
    std::vector<ExtraColumn> out;
    const auto& cols = rows_.columns();
    for (std::size_t c = kFirstExtraColumn; c < cols.size(); ++c) {
        ExtraColumn e{cols[c].name, std::vector<std::uint64_t>(interval_count())};
        for (std::uint64_t j = 0; j < interval_count(); ++j) e.values[j] = value(j, c);
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries

std::uint64_t IntervalTable::start(std::uint64_t j) const noexcept {
    if (mode_ == Mode::absolute) return abs_start(j);
    const std::uint64_t block = j / kSampleRate;
    std::uint64_t pos = samples_[block];
    for (std::uint64_t q = block * kSampleRate; q < j; ++q) pos += length(q);
    return pos;
}

void IntervalTable::check_cursor(MoveCursor cur) const {
    if (cur.interval >= interval_count())
        throw Error(Errc::bounds, "cursor interval " + std::to_string(cur.interval) +
                                      " >= " + std::to_string(interval_count()));
    if (cur.offset >= length(cur.interval))
        throw Error(Errc::bounds, "cursor offset " + std::to_string(cur.offset) +
                                      " outside interval of length " +
                                      std::to_string(length(cur.interval)));
}

MoveStep IntervalTable::move(MoveCursor cur, Search search) const {
    check_cursor(cur);
    if (search == Search::exponential) {
        if (mode_ != Mode::absolute)
            throw Error(Errc::unsupported_mode, "exponential search requires absolute mode");
        return move_exponential(cur);
    }
    return move_linear(cur);
}

MoveCursor IntervalTable::cursor_of(std::uint64_t i) const {
    if (i >= n_)
        throw Error(Errc::bounds, "position " + std::to_string(i) + " >= " + std::to_string(n_));
    const std::uint64_t r = interval_count();
    if (mode_ == Mode::absolute) {
        std::uint64_t lo = 0, hi = r; // start[lo] <= i < start[hi]
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (abs_start(mid) <= i)
                lo = mid;
            else
                hi = mid;
        }
        return {lo, i - abs_start(lo)};
    }
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), i);
    const std::uint64_t block = static_cast<std::uint64_t>(it - samples_.begin()) - 1;
    std::uint64_t j = block * kSampleRate;
    std::uint64_t pos = samples_[block];
    for (std::uint64_t len; i >= pos + (len = length(j)); ++j) pos += len;
    return {j, i - pos};
}

std::uint64_t IntervalTable::position_of(MoveCursor cur) const {
    check_cursor(cur);
    return start(cur.interval) + cur.offset;
}

std::uint64_t IntervalTable::eval_abs(std::uint64_t i) const {
    if (mode_ != Mode::absolute)
        throw Error(Errc::unsupported_mode, "eval_abs requires absolute mode");
    const MoveCursor c = cursor_of(i);
    return abs_start(dest_rank(c.interval)) + dest_offset(c.interval) + c.offset;
}

std::uint64_t IntervalTable::evaluate(std::uint64_t i) const {
    const MoveCursor c = cursor_of(i);
    return start(dest_rank(c.interval)) + dest_offset(c.interval) + c.offset;
}

std::vector<std::uint64_t> IntervalTable::evaluate_all() const {
    const std::vector<std::uint64_t> s = starts();
    std::vector<std::uint64_t> out(n_);
    for (std::uint64_t j = 0; j < interval_count(); ++j) {
        const std::uint64_t len = length(j);
        for (std::uint64_t k = 0; k < len; ++k) {
            const MoveCursor c = move_linear({j, k}).cursor;
            out[s[j] + k] = s[c.interval] + c.offset;
        }
    }
    return out;
}

std::vector<std::uint64_t> IntervalTable::starts() const {
    std::vector<std::uint64_t> s(interval_count());
    std::uint64_t pos = 0;
    for (std::uint64_t j = 0; j < interval_count(); ++j) {
        s[j] = pos;
        pos += length(j);
    }
    return s;
}

RankedRuns IntervalTable::ranked_runs() const {
    RankedRuns out;
    out.n = n_;
    out.starts = starts();
    const std::uint64_t r = interval_count();
    out.dest_rank.resize(r);
    out.dest_offset.resize(r);
    for (std::uint64_t j = 0; j < r; ++j) {
        out.dest_rank[j] = dest_rank(j);
        out.dest_offset[j] = dest_offset(j);
    }
    out.extras = extras();
    return out;
}

RunPermutation IntervalTable::runs() const {
    RunPermutation out;
    out.n = n_;
    out.starts = starts();
    out.images.resize(out.starts.size());
    for (std::size_t j = 0; j < out.starts.size(); ++j)
        out.images[j] = out.starts[dest_rank(j)] + dest_offset(j);
    return out;
}

void IntervalTable::validate() const {
    auto fail = [](const std::string& msg) { throw Error(Errc::invalid_permutation, msg); };
    const std::uint64_t r = interval_count();
    if (r == 0 || n_ == 0) fail("empty table");

    std::uint64_t total = 0, longest = 0;
    for (std::uint64_t j = 0; j < r; ++j) {
        if (mode_ == Mode::absolute && j + 1 < r && abs_start(j + 1) <= abs_start(j))
            fail("starts not strictly increasing at interval " + std::to_string(j));
        if (mode_ == Mode::absolute && j == 0 && abs_start(0) != 0) fail("start[0] != 0");
        const std::uint64_t len = length(j);
        if (len == 0 || len > n_) fail("interval " + std::to_string(j) + " has invalid length");
        total += len;
        longest = std::max(longest, len);
    }
    if (total != n_) fail("interval lengths sum to " + std::to_string(total) + ", not n");
    if (longest != max_len_) fail("recorded max length is stale");

    for (std::uint64_t j = 0; j < r; ++j) {
        if (dest_rank(j) >= r) fail("dest_rank out of range at interval " + std::to_string(j));
        if (dest_offset(j) >= length(dest_rank(j)))
            fail("dest_offset[" + std::to_string(j) + "] >= len[dest_rank]");
    }

    // Images of the intervals must tile [0, n): that makes the table a bijection.
    const RunPermutation rp = runs();
    rp.validate();

    for (std::size_t c = 0; c < rows_.column_count(); ++c) {
        const unsigned want = min_width(rows_.column_max(c));
        if (rows_.columns()[c].width != want)
            fail("column '" + rows_.columns()[c].name + "' width " +
                 std::to_string(rows_.columns()[c].width) + " is not minimal (" +
                 std::to_string(want) + ")");
    }
    if (meta_.cap_length != 0 && max_len_ > meta_.cap_length)
        fail("max interval length exceeds the recorded cap");
}

bool IntervalTable::operator==(const IntervalTable& other) const {
    return n_ == other.n_ && mode_ == other.mode_ && kind_ == other.kind_ &&
           meta_ == other.meta_ && rows_ == other.rows_;
}

} // namespace runmove
