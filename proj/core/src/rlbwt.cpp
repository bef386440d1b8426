#include "runmove/rlbwt.hpp"

#include <algorithm>
#include <cstring>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "le_io.hpp"

namespace runmove {

namespace {

constexpr char kRlbwtMagic[4] = {'R', 'L', 'B', 'W'};
constexpr std::uint8_t kRlbwtVersion = 1;
// Capping factor for the LF structure that drives phi construction.
constexpr CapFactor kTraversalCap{8, 1};

std::vector<std::uint64_t> run_starts(const Rlbwt& rl) {
    std::vector<std::uint64_t> s(rl.run_count());
    std::uint64_t pos = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] = pos;
        pos += rl.runs()[j].length;
    }
    return s;
}

// Run indices grouped by symbol, each group in run order. Because LF images of
// same-symbol runs increase with run order and symbol buckets are laid out in
// symbol order, this is the sorted order of the LF images.
std::vector<std::size_t> runs_by_symbol(const Rlbwt& rl) {
    std::array<std::size_t, 257> bucket{};
    for (const auto& run : rl.runs()) ++bucket[run.symbol + 1];
    std::partial_sum(bucket.begin(), bucket.end(), bucket.begin());
    std::vector<std::size_t> order(rl.run_count());
    for (std::size_t j = 0; j < rl.run_count(); ++j) order[bucket[rl.runs()[j].symbol]++] = j;
    return order;
}

std::vector<std::uint64_t> lf_images(const Rlbwt& rl) {
    auto next = rl.first_positions();
    std::vector<std::uint64_t> img(rl.run_count());
    for (std::size_t j = 0; j < rl.run_count(); ++j) {
        const auto& run = rl.runs()[j];
        img[j] = next[run.symbol];
        next[run.symbol] += run.length;
    }
    return img;
}

ExtraColumn symbol_column(const Rlbwt& rl, std::span<const std::size_t> order) {
    ExtraColumn sym{"sym", std::vector<std::uint64_t>(order.size())};
    for (std::size_t i = 0; i < order.size(); ++i) sym.values[i] = rl.runs()[order[i]].symbol;
    return sym;
}

RankedRuns lf_ranked(const Rlbwt& rl) {
    const std::size_t r = rl.run_count();
    const auto starts = run_starts(rl);
    const auto images = lf_images(rl);
    RankedRuns out;
    out.n = rl.size();
    out.starts = starts;
    out.dest_rank.resize(r);
    out.dest_offset.resize(r);
    std::size_t p = 0;
    for (std::size_t j : runs_by_symbol(rl)) {
        while (p + 1 < r && starts[p + 1] <= images[j]) ++p;
        out.dest_rank[j] = p;
        out.dest_offset[j] = images[j] - starts[p];
    }
    return out;
}

void check_sentinel_count(std::span<const BwtRun> runs) {
    std::uint64_t sentinels = 0;
    for (const auto& run : runs)
        if (run.symbol == kSentinel) sentinels += run.length;
    if (sentinels != 1)
        throw Error(Errc::invalid_input,
                    "RLBWT must contain exactly one sentinel, found " + std::to_string(sentinels));
}

} // namespace

// ---------------------------------------------------------------------------
// Rlbwt

Rlbwt::Rlbwt(std::vector<BwtRun> runs) : runs_(std::move(runs)) {
    if (runs_.empty()) throw Error(Errc::invalid_input, "RLBWT has no runs");
    for (std::size_t j = 0; j < runs_.size(); ++j) {
        if (runs_[j].length == 0) throw Error(Errc::invalid_input, "RLBWT run of length 0");
        if (j > 0 && runs_[j].symbol == runs_[j - 1].symbol)
            throw Error(Errc::invalid_input, "adjacent RLBWT runs share a symbol");
        counts_[runs_[j].symbol] += runs_[j].length;
        n_ += runs_[j].length;
    }
    check_sentinel_count(runs_);
    sigma_ = static_cast<unsigned>(
        std::count_if(counts_.begin(), counts_.end(), [](std::uint64_t c) { return c != 0; }));
}

Rlbwt Rlbwt::from_bwt(std::span<const std::uint8_t> bwt) {
    std::vector<BwtRun> runs;
    for (std::uint8_t c : bwt) {
        if (!runs.empty() && runs.back().symbol == c)
            ++runs.back().length;
        else
            runs.push_back({c, 1});
    }
    return Rlbwt(std::move(runs));
}

std::array<std::uint64_t, 256> Rlbwt::first_positions() const noexcept {
    std::array<std::uint64_t, 256> c{};
    std::uint64_t sum = 0;
    for (std::size_t s = 0; s < 256; ++s) {
        c[s] = sum;
        sum += counts_[s];
    }
    return c;
}

std::vector<std::uint8_t> Rlbwt::expand() const {
    std::vector<std::uint8_t> out;
    out.reserve(n_);
    for (const auto& run : runs_) out.insert(out.end(), run.length, run.symbol);
    return out;
}

void write_rlbwt(std::ostream& out, const Rlbwt& rl) {
    out.write(kRlbwtMagic, 4);
    detail::put_u8(out, kRlbwtVersion);
    detail::put_u64(out, rl.size());
    detail::put_u64(out, rl.run_count());
    for (const auto& run : rl.runs()) {
        detail::put_u8(out, run.symbol);
        detail::put_u64(out, run.length);
    }
    if (!out) throw Error(Errc::io, "failed writing RLBWT");
}

Rlbwt read_rlbwt(std::istream& in) {
    char magic[4];
    detail::read_exact(in, magic, 4, "RLBWT magic");
    if (std::memcmp(magic, kRlbwtMagic, 4) != 0) throw Error(Errc::corrupt_file, "not an RLBWT file");
    if (const auto v = detail::get_u8(in, "RLBWT version"); v != kRlbwtVersion)
        throw Error(Errc::corrupt_file, "unsupported RLBWT version " + std::to_string(v));
    const std::uint64_t n = detail::get_u64(in, "RLBWT n");
    const std::uint64_t r = detail::get_u64(in, "RLBWT r");
    if (r > n) throw Error(Errc::corrupt_file, "RLBWT run count exceeds length");
    std::vector<BwtRun> runs;
    runs.reserve(r);
    for (std::uint64_t j = 0; j < r; ++j) {
        BwtRun run;
        run.symbol = detail::get_u8(in, "RLBWT symbol");
        run.length = detail::get_u64(in, "RLBWT length");
        runs.push_back(run);
    }
    Rlbwt rl(std::move(runs));
    if (rl.size() != n) throw Error(Errc::corrupt_file, "RLBWT run lengths do not sum to n");
    return rl;
}

void write_rlbwt_text(std::ostream& out, const Rlbwt& rl) {
    for (const auto& run : rl.runs())
        out << std::hex << std::setw(2) << std::setfill('0') << unsigned{run.symbol} << std::dec
            << ' ' << run.length << '\n';
}

Rlbwt read_rlbwt_text(std::istream& in) {
    std::vector<BwtRun> runs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned sym = 0;
        std::uint64_t len = 0;
        if (!(ls >> std::hex >> sym >> std::dec >> len) || sym > 0xff)
            throw Error(Errc::invalid_input, "bad RLBWT text line: " + line);
        runs.push_back({static_cast<std::uint8_t>(sym), len});
    }
    return Rlbwt(std::move(runs));
}

// ---------------------------------------------------------------------------
// Desk-scale BWT

std::vector<std::uint64_t> suffix_array(std::span<const std::uint8_t> text) {
    const std::uint64_t n = text.size();
    std::vector<std::uint64_t> sa(n), rank(n), next(n);
    std::iota(sa.begin(), sa.end(), 0);
    for (std::uint64_t i = 0; i < n; ++i) rank[i] = text[i];
    for (std::uint64_t k = 1; n > 1; k <<= 1) {
        auto second = [&](std::uint64_t i) { return i + k < n ? rank[i + k] + 1 : 0; };
        std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
            return rank[a] != rank[b] ? rank[a] < rank[b] : second(a) < second(b);
        });
        next[sa[0]] = 0;
        for (std::uint64_t i = 1; i < n; ++i) {
            const bool differs =
                rank[sa[i]] != rank[sa[i - 1]] || second(sa[i]) != second(sa[i - 1]);
            next[sa[i]] = next[sa[i - 1]] + (differs ? 1 : 0);
        }
        rank.swap(next);
        if (rank[sa[n - 1]] == n - 1) break;
    }
    return sa;
}

BwtBuild build_bwt(std::span<const std::uint8_t> text) {
    if (text.empty() || (text.size() == 1 && text[0] == kSentinel))
        throw Error(Errc::invalid_input, "text is empty");
    const std::size_t body = text.back() == kSentinel ? text.size() - 1 : text.size();
    if (std::find(text.begin(), text.begin() + body, kSentinel) != text.begin() + body)
        throw Error(Errc::invalid_input, "text contains an embedded 0x00 byte");

    BwtBuild out;
    out.text.assign(text.begin(), text.begin() + body);
    out.text.push_back(kSentinel);
    out.sa = suffix_array(out.text);
    const std::uint64_t n = out.text.size();
    std::vector<std::uint8_t> bwt(n);
    for (std::uint64_t i = 0; i < n; ++i)
        bwt[i] = out.sa[i] > 0 ? out.text[out.sa[i] - 1] : out.text[n - 1];
    out.rlbwt = Rlbwt::from_bwt(bwt);
    return out;
}

BwtBuild build_bwt(std::string_view text) {
    return build_bwt(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// ---------------------------------------------------------------------------
// LF / FL

IntervalTable build_lf(const Rlbwt& rl, Mode mode) {
    RankedRuns ranked = lf_ranked(rl);
    std::vector<std::size_t> identity(rl.run_count());
    std::iota(identity.begin(), identity.end(), 0);
    ranked.extras.push_back(symbol_column(rl, identity));
    return IntervalTable::build(ranked, mode, PermKind::lf);
}

IntervalTable build_fl(const Rlbwt& rl, Mode mode) {
    const std::size_t r = rl.run_count();
    const auto lf_starts = run_starts(rl);
    const auto lf_img = lf_images(rl);
    // FL interval i is the output interval of LF run order[i].
    const auto order = runs_by_symbol(rl);
    std::vector<std::size_t> fl_index(r);
    for (std::size_t i = 0; i < r; ++i) fl_index[order[i]] = i;

    RankedRuns out;
    out.n = rl.size();
    out.starts.resize(r);
    out.dest_rank.resize(r);
    out.dest_offset.resize(r);
    for (std::size_t i = 0; i < r; ++i) out.starts[i] = lf_img[order[i]];
    // FL images are the LF run starts, already increasing in run order.
    std::size_t p = 0;
    for (std::size_t j = 0; j < r; ++j) {
        while (p + 1 < r && out.starts[p + 1] <= lf_starts[j]) ++p;
        out.dest_rank[fl_index[j]] = p;
        out.dest_offset[fl_index[j]] = lf_starts[j] - out.starts[p];
    }
    out.extras.push_back(symbol_column(rl, order));
    return IntervalTable::build(out, mode, PermKind::fl);
}

// ---------------------------------------------------------------------------
// phi / phi^-1

namespace {

// Capped LF structure tagged with the BWT run of every piece.
IntervalTable traversal_lf(const Rlbwt& rl) {
    RankedRuns ranked = lf_ranked(rl);
    ExtraColumn run{"run", std::vector<std::uint64_t>(rl.run_count())};
    std::iota(run.values.begin(), run.values.end(), 0);
    ranked.extras.push_back(std::move(run));
    IntervalTable lf = IntervalTable::build(ranked, Mode::relative, PermKind::lf);
    return length_cap(lf, kTraversalCap);
}

// Walks LF from row 0 (SA value n-1) for n steps, reporting every run head and tail
// as visit(run, sa_value, is_head, is_tail). SA values strictly decrease.
template <class Visit>
void walk_run_boundaries(const Rlbwt& rl, Visit&& visit) {
    const IntervalTable lf = traversal_lf(rl);
    const std::size_t run_col = *lf.column("run");
    const std::uint64_t r = lf.interval_count();
    const std::uint64_t n = rl.size();
    MoveCursor cur{0, 0};
    std::uint64_t sa = n - 1;
    for (std::uint64_t step = 0; step < n; ++step, --sa) {
        const std::uint64_t j = cur.interval;
        const std::uint64_t run = lf.value(j, run_col);
        const bool head = cur.offset == 0 && (j == 0 || lf.value(j - 1, run_col) != run);
        const bool tail =
            cur.offset + 1 == lf.length(j) && (j + 1 == r || lf.value(j + 1, run_col) != run);
        if (head || tail) visit(run, sa, head, tail);
        cur = lf.move_linear(cur).cursor;
    }
}

} // namespace

SaSamples sample_sa(const Rlbwt& rl) {
    SaSamples s;
    s.head.assign(rl.run_count(), 0);
    s.tail.assign(rl.run_count(), 0);
    walk_run_boundaries(rl, [&](std::uint64_t run, std::uint64_t sa, bool head, bool tail) {
        if (head) s.head[run] = sa;
        if (tail) s.tail[run] = sa;
    });
    return s;
}

PhiBuild build_phi_via_lf(const Rlbwt& rl, bool inverse, Mode mode) {
    const std::uint64_t r = rl.run_count();
    // Per BWT run: the rank of the interval it starts and that interval's destination.
    std::vector<std::uint64_t> rank_of(r), dest_rank(r), dest_offset(r);
    std::vector<std::uint64_t> start_of(r);
    struct Pending {
        std::uint64_t run; // run whose interval has this image
        std::uint64_t image;
    };
    std::vector<Pending> pending;
    std::uint64_t discovered = 0;
    SaSamples samples;
    samples.head.assign(r, 0);
    samples.tail.assign(r, 0);

    // phi intervals start at run heads and map to the previous run's tail;
    // phi^-1 intervals start at run tails and map to the next run's head.
    walk_run_boundaries(rl, [&](std::uint64_t run, std::uint64_t sa, bool head, bool tail) {
        if (head) samples.head[run] = sa;
        if (tail) samples.tail[run] = sa;
        const bool image_here = inverse ? head : tail;
        const bool start_here = inverse ? tail : head;
        if (image_here) {
            const std::uint64_t owner = inverse ? (run + r - 1) % r : (run + 1) % r;
            pending.push_back({owner, sa});
        }
        if (start_here) {
            const std::uint64_t rank = r - 1 - discovered++;
            rank_of[run] = rank;
            start_of[run] = sa;
            // Every image seen so far is >= sa and below the previous start.
            for (const auto& p : pending) {
                dest_rank[p.run] = rank;
                dest_offset[p.run] = p.image - sa;
            }
            pending.clear();
        }
    });
    if (discovered != r || !pending.empty())
        throw Error(Errc::invalid_input, "LF traversal did not visit every run boundary");

    RankedRuns ranked;
    ranked.n = rl.size();
    ranked.starts.resize(r);
    ranked.dest_rank.resize(r);
    ranked.dest_offset.resize(r);
    for (std::uint64_t run = 0; run < r; ++run) {
        const std::uint64_t at = rank_of[run];
        ranked.starts[at] = start_of[run];
        ranked.dest_rank[at] = dest_rank[run];
        ranked.dest_offset[at] = dest_offset[run];
    }
    PhiBuild out{IntervalTable::build(ranked, mode, inverse ? PermKind::phi_inv : PermKind::phi),
                 std::move(samples)};
    return out;
}

IntervalTable build_phi_sorted(const Rlbwt& rl, bool inverse, Mode mode) {
    const SaSamples s = sample_sa(rl);
    const std::uint64_t r = rl.run_count();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(r);
    for (std::uint64_t j = 0; j < r; ++j)
        pairs[j] = inverse ? std::pair{s.tail[j], s.head[(j + 1) % r]}
                           : std::pair{s.head[j], s.tail[(j + r - 1) % r]};
    std::sort(pairs.begin(), pairs.end());
    RunPermutation rp;
    rp.n = rl.size();
    for (const auto& [start, image] : pairs) {
        rp.starts.push_back(start);
        rp.images.push_back(image);
    }
    return IntervalTable::from_runs(rp, mode, inverse ? PermKind::phi_inv : PermKind::phi);
}

// ---------------------------------------------------------------------------
// Documents

DocBounds::DocBounds(std::vector<std::uint64_t> starts, std::uint64_t n) : starts_(std::move(starts)) {
    if (starts_.empty()) throw Error(Errc::invalid_input, "document bounds are empty");
    if (starts_[0] != 0) throw Error(Errc::invalid_input, "first document must start at 0");
    for (std::size_t i = 0; i < starts_.size(); ++i) {
        if (starts_[i] >= n) throw Error(Errc::invalid_input, "document start beyond text end");
        if (i > 0 && starts_[i] <= starts_[i - 1])
            throw Error(Errc::invalid_input, "document starts must be strictly increasing");
    }
}

std::uint64_t DocBounds::doc_of(std::uint64_t pos) const noexcept {
    return static_cast<std::uint64_t>(std::upper_bound(starts_.begin(), starts_.end(), pos) -
                                      starts_.begin()) -
           1;
}

DocBounds read_doc_bounds(std::istream& in, std::uint64_t n) {
    std::vector<std::uint64_t> starts;
    std::uint64_t v = 0;
    while (in >> v) starts.push_back(v);
    if (!in.eof()) throw Error(Errc::invalid_input, "document bounds must be decimal integers");
    return DocBounds(std::move(starts), n);
}

SaSamples sample_docs(SaSamples samples, const DocBounds& bounds) {
    if (bounds.count() == 0) throw Error(Errc::invalid_input, "document bounds are empty");
    samples.head_doc.resize(samples.head.size());
    samples.tail_doc.resize(samples.tail.size());
    for (std::size_t j = 0; j < samples.head.size(); ++j) samples.head_doc[j] = bounds.doc_of(samples.head[j]);
    for (std::size_t j = 0; j < samples.tail.size(); ++j) samples.tail_doc[j] = bounds.doc_of(samples.tail[j]);
    return samples;
}

} // namespace runmove
