#include <benchmark/benchmark.h>

#include <random>

#include "runmove/rlbwt.hpp"
#include "runmove/splitting.hpp"
#include "runmove/synthetic.hpp"
#include "runmove/traversal.hpp"

using namespace runmove;

namespace {

// 64 lightly mutated copies of a 4 KiB seed, about 256K symbols.
const BwtBuild& repetitive() {
    static const BwtBuild b = [] {
        std::mt19937_64 rng(42);
        return build_bwt(synthetic::repetitive_text(rng, 4096, 64, 8));
    }();
    return b;
}

const IntervalTable& lf_table(Mode mode, CapFactor cap) {
    static std::vector<std::pair<std::pair<Mode, CapFactor>, IntervalTable>> cache;
    for (auto& [key, t] : cache)
        if (key.first == mode && key.second == cap) return t;
    IntervalTable t = build_lf(repetitive().rlbwt, mode);
    if (cap.enabled()) t = length_cap(t, cap);
    cache.emplace_back(std::make_pair(mode, cap), std::move(t));
    return cache.back().second;
}

template <Search S>
void chained(benchmark::State& state, const IntervalTable& t) {
    MoveCursor cur{0, 0};
    std::uint64_t ff = 0;
    for (auto _ : state) {
        const MoveStep s = S == Search::exponential ? t.move_exponential(cur) : t.move_linear(cur);
        cur = s.cursor;
        ff += s.fast_forwards;
        benchmark::DoNotOptimize(cur);
    }
    state.counters["r'"] = static_cast<double>(t.interval_count());
    state.counters["ff/query"] =
        benchmark::Counter(static_cast<double>(ff), benchmark::Counter::kAvgIterations);
}

void BM_LfUncapped(benchmark::State& state) {
    chained<Search::linear>(state, lf_table(static_cast<Mode>(state.range(0)), {}));
}
BENCHMARK(BM_LfUncapped)->Arg(0)->Arg(1)->ArgName("relative");

void BM_LfCapped(benchmark::State& state) {
    const CapFactor c{static_cast<std::uint64_t>(state.range(1)), 2};
    chained<Search::linear>(state, lf_table(static_cast<Mode>(state.range(0)), c));
}
BENCHMARK(BM_LfCapped)->ArgsProduct({{0, 1}, {1, 2, 4, 16}})->ArgNames({"relative", "2c"});

void BM_LfExponential(benchmark::State& state) {
    const CapFactor c{static_cast<std::uint64_t>(state.range(0)), 1};
    chained<Search::exponential>(state, lf_table(Mode::absolute, c));
}
BENCHMARK(BM_LfExponential)->Arg(0)->Arg(8)->ArgName("c");

void BM_AdversarialTraversal(benchmark::State& state) {
    static const IntervalTable base =
        IntervalTable::from_permutation(synthetic::adversarial_permutation(4096, 1024, 1));
    static const IntervalTable capped = length_cap(base, {1, 1});
    static const IntervalTable balanced = balance(base, 4);
    const IntervalTable& t = state.range(0) == 0 ? base : state.range(0) == 1 ? capped : balanced;
    chained<Search::linear>(state, t);
}
BENCHMARK(BM_AdversarialTraversal)->DenseRange(0, 2)->ArgName("uncapped|capped|balanced");

void BM_BuildLf(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_lf(repetitive().rlbwt));
}
BENCHMARK(BM_BuildLf)->Unit(benchmark::kMillisecond);

void BM_BuildPhiInvTraversal(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_phi_via_lf(repetitive().rlbwt, true));
}
BENCHMARK(BM_BuildPhiInvTraversal)->Unit(benchmark::kMillisecond);

void BM_BuildPhiInvSorted(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_phi_sorted(repetitive().rlbwt, true));
}
BENCHMARK(BM_BuildPhiInvSorted)->Unit(benchmark::kMillisecond);

void BM_LengthCap(benchmark::State& state) {
    const IntervalTable& t = lf_table(Mode::absolute, {});
    for (auto _ : state) benchmark::DoNotOptimize(length_cap(t, {1, 2}));
}
BENCHMARK(BM_LengthCap)->Unit(benchmark::kMillisecond);

void BM_Balance(benchmark::State& state) {
    const IntervalTable& t = lf_table(Mode::absolute, {});
    for (auto _ : state) benchmark::DoNotOptimize(balance(t, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Balance)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Invert(benchmark::State& state) {
    const IntervalTable& t = lf_table(Mode::absolute, {8, 1});
    for (auto _ : state) {
        MemoryByteSink sink;
        sink.bytes.reserve(t.domain_size());
        invert_bwt(t, sink);
        benchmark::DoNotOptimize(sink.bytes.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * t.domain_size()));
}
BENCHMARK(BM_Invert)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
