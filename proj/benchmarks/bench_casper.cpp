#include <benchmark/benchmark.h>

#include "scratchoff/adversary.hpp"
#include "scratchoff/analysis.hpp"
#include "scratchoff/casper.hpp"

using namespace scratchoff;

static void SettleRound(benchmark::State& state) {
    const uint64_t n = uint64_t(state.range(0));
    for (auto _ : state) {
        state.PauseTiming();
        ValidatorSet validators;
        for (uint64_t i = 0; i < n; ++i) validators.bond(i, 10);
        validators.bond(n + 1, 1u << 20);
        Round round(uint64_t(state.iterations()), std::max<uint64_t>(1, n / 3));
        for (uint64_t i = 0; i < n; ++i)
            round.alpha_work(validators, i, Payload::from_string("b"));
        for (uint64_t i = 0; i < n; ++i)
            round.beta_work(validators, BetAllocation{n + 1, {{i, 1 + i % 7}}});
        state.ResumeTiming();
        benchmark::DoNotOptimize(round.settle(validators));
    }
}
BENCHMARK(SettleRound)->Arg(8)->Arg(64)->Arg(512);

static void ScheduledRound(benchmark::State& state) {
    RoundScheduleConfig config;
    config.num_nodes = 8;
    config.steps = uint32_t(state.range(0));
    config.casper.blocktime = 0.2;
    uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(late_bettor(config, 0.85));
    }
}
BENCHMARK(ScheduledRound)->Arg(80)->Arg(800);

static void GammaFeasibility(benchmark::State& state) {
    const double d = double(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_feasibility(d, 2.0 / 3.0));
    }
}
BENCHMARK(GammaFeasibility)->Arg(1)->Arg(8)->Arg(20);

static void BondEightThousand(benchmark::State& state) {
    for (auto _ : state) {
        ValidatorSet set;
        for (uint64_t id = 0; id < kMaxBondedValidators; ++id) set.bond(id, 1);
        benchmark::DoNotOptimize(set.bonded_count());
    }
}
BENCHMARK(BondEightThousand);

BENCHMARK_MAIN();
