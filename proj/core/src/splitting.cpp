#include "runmove/splitting.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <iterator>
#include <map>
#include <numeric>

namespace runmove {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(Errc::invalid_parameter, "cannot parse cap factor '" + std::string(whole) + "'");
    return v;
}

CapFactor reduced(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw Error(Errc::invalid_parameter, "cap factor denominator is zero");
    if (num == 0) return {0, 1};
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

} // namespace

CapFactor CapFactor::parse(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos)
        return reduced(parse_u64(text.substr(0, slash), text), parse_u64(text.substr(slash + 1), text));
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view whole = text.substr(0, dot);
        const std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 18) throw Error(Errc::invalid_parameter, "too many decimal digits");
        std::uint64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole, text);
        const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac, text);
        return reduced(w * den + f, den);
    }
    return reduced(parse_u64(text, text), 1);
}

std::string CapFactor::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::uint64_t cap_length(std::uint64_t n, std::uint64_t r, CapFactor c) {
    if (!c.enabled()) throw Error(Errc::invalid_parameter, "cap factor must be positive");
    if (r == 0) throw Error(Errc::invalid_parameter, "run count must be positive");
    const unsigned __int128 num = static_cast<unsigned __int128>(c.num) * n;
    const unsigned __int128 den = static_cast<unsigned __int128>(c.den) * r;
    const unsigned __int128 L = (num + den - 1) / den;
    return L == 0 ? 1 : static_cast<std::uint64_t>(std::min<unsigned __int128>(L, n));
}

IntervalTable length_cap(const IntervalTable& table, CapFactor c) {
    SplitMeta meta = table.meta();
    const std::uint64_t source_r = meta.source_runs ? meta.source_runs : table.interval_count();
    const std::uint64_t L = cap_length(table.domain_size(), source_r, c);

    const RankedRuns in = table.ranked_runs();
    const std::size_t r = in.starts.size();
    const std::uint64_t n = in.n;
    auto len = [&](std::size_t j) { return (j + 1 < r ? in.starts[j + 1] : n) - in.starts[j]; };

    // first_piece[q]: rank in the output of the first piece of input interval q.
    std::vector<std::uint64_t> first_piece(r + 1, 0);
    for (std::size_t q = 0; q < r; ++q) first_piece[q + 1] = first_piece[q] + (len(q) + L - 1) / L;
    const std::uint64_t out_r = first_piece[r];

    RankedRuns out;
    out.n = n;
    out.starts.reserve(out_r);
    out.dest_rank.reserve(out_r);
    out.dest_offset.reserve(out_r);
    for (const auto& e : in.extras) out.extras.push_back({e.name, {}});

    for (std::size_t j = 0; j < r; ++j) {
        const std::uint64_t pieces = first_piece[j + 1] - first_piece[j];
        const std::uint64_t image = in.starts[in.dest_rank[j]] + in.dest_offset[j];
        std::size_t q = in.dest_rank[j];
        for (std::uint64_t m = 0; m < pieces; ++m) {
            const std::uint64_t y = image + m * L;
            // Walk forward through the input starts covered by this output interval.
            while (q + 1 < r && in.starts[q + 1] <= y) ++q;
            const std::uint64_t d = y - in.starts[q];
            out.starts.push_back(in.starts[j] + m * L);
            out.dest_rank.push_back(first_piece[q] + d / L);
            out.dest_offset.push_back(d % L);
            for (std::size_t e = 0; e < in.extras.size(); ++e)
                out.extras[e].values.push_back(in.extras[e].values[j]);
        }
    }

    meta.source_runs = source_r;
    meta.cap_num = c.num;
    meta.cap_den = c.den;
    meta.cap_length = L;
    if (out_r != r) meta.alpha = 0; // new starts may unbalance a balanced table
    return IntervalTable::build(out, table.mode(), table.kind(), meta);
}

IntervalTable balance(const IntervalTable& table, std::uint64_t alpha) {
    if (alpha < 2) throw Error(Errc::invalid_parameter, "alpha must be at least 2");
    const RunPermutation rp = table.runs();
    const std::vector<ExtraColumn> extras = table.extras();
    const std::uint64_t n = rp.n;
    const std::uint64_t limit = 2 * alpha;

    struct Source {
        std::uint64_t image;
        std::size_t origin;
    };
    struct Output {
        std::uint64_t start;
        std::uint64_t count; // interval starts inside this output interval
    };
    std::map<std::uint64_t, Source> by_start;
    std::map<std::uint64_t, Output> by_image;
    for (std::size_t j = 0; j < rp.starts.size(); ++j) {
        by_start.emplace_hint(by_start.end(), rp.starts[j], Source{rp.images[j], j});
        by_image.emplace(rp.images[j], Output{rp.starts[j], 0});
    }
    auto containing = [&](std::uint64_t p) { return std::prev(by_image.upper_bound(p)); };
    for (const auto& [p, src] : by_start) ++containing(p)->second.count;

    std::deque<std::uint64_t> work;
    for (const auto& [y, out] : by_image)
        if (out.count >= limit) work.push_back(y);

    while (!work.empty()) {
        const std::uint64_t y = work.front();
        work.pop_front();
        auto oit = by_image.find(y);
        if (oit->second.count < limit) continue;

        const std::uint64_t p = oit->second.start;
        const auto sit = by_start.find(p);

        // Cut at the (alpha+1)-th start inside [y, y+len) so both halves keep >= alpha.
        auto cut = by_start.lower_bound(y);
        std::advance(cut, alpha);
        const std::uint64_t t = cut->first - y;

        const std::uint64_t total = oit->second.count;
        oit->second.count = alpha;
        by_start.emplace(p + t, Source{y + t, sit->second.origin});
        by_image.emplace(y + t, Output{p + t, total - alpha});
        if (total - alpha >= limit) work.push_back(y + t);

        auto host = containing(p + t);
        if (++host->second.count >= limit) work.push_back(host->first);
    }

    RunPermutation out;
    out.n = n;
    std::vector<ExtraColumn> out_extras;
    for (const auto& e : extras) out_extras.push_back({e.name, {}});
    for (const auto& [p, src] : by_start) {
        out.starts.push_back(p);
        out.images.push_back(src.image);
        for (std::size_t e = 0; e < extras.size(); ++e)
            out_extras[e].values.push_back(extras[e].values[src.origin]);
    }
    SplitMeta meta = table.meta();
    meta.alpha = alpha;
    return IntervalTable::build(rank_runs(out, std::move(out_extras)), table.mode(), table.kind(),
                                meta);
}

IntervalTable apply_splits(const IntervalTable& table, const SplitConfig& cfg) {
    if (cfg.alpha == 1) throw Error(Errc::invalid_parameter, "alpha must be 0 or at least 2");
    IntervalTable out = cfg.cap.enabled() ? length_cap(table, cfg.cap) : table;
    if (cfg.alpha != 0) out = balance(out, cfg.alpha);
    return out;
}

IntervalTable split_at(const IntervalTable& table, std::span<const std::uint64_t> positions) {
    std::vector<std::uint64_t> cuts(positions.begin(), positions.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (!cuts.empty() && cuts.back() >= table.domain_size())
        throw Error(Errc::bounds, "split position outside the domain");

    const RunPermutation rp = table.runs();
    const std::vector<ExtraColumn> extras = table.extras();
    RunPermutation out;
    out.n = rp.n;
    std::vector<ExtraColumn> out_extras;
    for (const auto& e : extras) out_extras.push_back({e.name, {}});
    auto emit = [&](std::uint64_t start, std::uint64_t image, std::size_t origin) {
        out.starts.push_back(start);
        out.images.push_back(image);
        for (std::size_t e = 0; e < extras.size(); ++e)
            out_extras[e].values.push_back(extras[e].values[origin]);
    };
    std::size_t c = 0;
    for (std::size_t j = 0; j < rp.starts.size(); ++j) {
        const std::uint64_t s = rp.starts[j];
        const std::uint64_t end = s + rp.length(j);
        emit(s, rp.images[j], j);
        while (c < cuts.size() && cuts[c] <= s) ++c;
        for (; c < cuts.size() && cuts[c] < end; ++c) emit(cuts[c], rp.images[j] + (cuts[c] - s), j);
    }
    SplitMeta meta = table.meta();
    if (out.starts.size() != rp.starts.size()) meta.alpha = 0;
    return IntervalTable::build(rank_runs(out, std::move(out_extras)), table.mode(), table.kind(),
                                meta);
}

} // namespace runmove
