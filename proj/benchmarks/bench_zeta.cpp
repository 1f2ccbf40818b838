#include <benchmark/benchmark.h>

#include "scratchoff/zeta.hpp"

using namespace scratchoff;

static void ZetaSingleSuccess(benchmark::State& state) {
    const uint64_t t = uint64_t(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta(1, t, 8.0));
    }
}
BENCHMARK(ZetaSingleSuccess)->Arg(256)->Arg(10000)->Arg(1000000);

static void ZetaMidTail(benchmark::State& state) {
    // l near the mode forces the long summation path
    const uint64_t t = uint64_t(state.range(0));
    const uint64_t l = t / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta(l, t, 1.0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ZetaMidTail)->RangeMultiplier(10)->Range(100, 1000000)->Complexity();

static void BinomPmf(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(binom_pmf(500000, 1000000, 0.5));
    }
}
BENCHMARK(BinomPmf);

static void PaperLiteral(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta_paper_literal(1, 1e6, 20.0));
    }
}
BENCHMARK(PaperLiteral);

BENCHMARK_MAIN();
