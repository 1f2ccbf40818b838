#include <benchmark/benchmark.h>

#include "scratchoff/hash_puzzle.hpp"

using namespace scratchoff;

static void Sha256Preimage(benchmark::State& state) {
    std::vector<uint8_t> data(size_t(state.range(0)), 0xab);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Sha256::hash(data));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(Sha256Preimage)->Arg(48)->Arg(1024)->Arg(65536);

static void KeyedTestHash(benchmark::State& state) {
    std::vector<uint8_t> data(48, 0xcd);
    for (auto _ : state) {
        benchmark::DoNotOptimize(keyed_test_hash(42, data));
    }
}
BENCHMARK(KeyedTestHash);

static void WorkExhaustion(benchmark::State& state) {
    // d = 64 never wins at these budgets: measures raw scan throughput
    const HashPuzzleConfig config = gen(256, 64.0);
    const PuzzleInstance puz = sample_puzzle_instance(config.params, 1, 0);
    const Payload m = Payload::from_string("bench");
    const uint64_t budget = uint64_t(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(work(config, puz, m, budget, 0));
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(budget));
}
BENCHMARK(WorkExhaustion)->Arg(256)->Arg(4096);

static void VerifyTicket(benchmark::State& state) {
    const HashPuzzleConfig config = gen(256, 4.0);
    const PuzzleInstance puz = sample_puzzle_instance(config.params, 2, 0);
    const Payload m = Payload::from_string("bench");
    const WorkResult r = work(config, puz, m, 4096, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify(config, puz, m, *r.ticket));
    }
}
BENCHMARK(VerifyTicket);

BENCHMARK_MAIN();
