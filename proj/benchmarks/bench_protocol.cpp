#include "blindgrover/parties.hpp"

#include <benchmark/benchmark.h>

using namespace blindgrover;

static void BM_BlindGate(benchmark::State& state) {
    const GateKind g = static_cast<GateKind>(state.range(0));
    Prng rng(11);
    const int width = gate_arity(g);
    const PauliKey key = keygen(width, rng);
    const StateVector cipher = encrypt(plus_state(width), key);
    GateJob job{g, {}};
    for (int q = 0; q < width; ++q) job.wires.push_back(q);
    for (auto _ : state) {
        BlindGateResult r = execute_gate_blind(job, cipher, key, rng);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_BlindGate)
    ->Arg(static_cast<int>(GateKind::H))
    ->Arg(static_cast<int>(GateKind::T))
    ->Arg(static_cast<int>(GateKind::CZ))
    ->Arg(static_cast<int>(GateKind::TOFFOLI));

static void BM_GroverPlain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GroverCircuit c = build_grover(std::string(n, '1'));
    Prng rng(3);
    for (auto _ : state) {
        SearchResult r = run_plain(c, plus_state(n), rng);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_GroverPlain)->Arg(2)->Arg(4)->Arg(6);

static void BM_GroverBlind(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GroverCircuit c = build_grover(std::string(n, '1'));
    Prng rng(3);
    const PauliKey key = keygen(n, rng);
    const StateVector cipher = encrypt(plus_state(n), key);
    for (auto _ : state) {
        BlindSearchOutcome r = run_blind(c, cipher, key, rng);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_GroverBlind)->Arg(2)->Arg(3);

static void BM_Scenario(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.target = "01";
    cfg.decoys.m = 4;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        ScenarioReport rep = run_scenario(cfg);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_Scenario);

BENCHMARK_MAIN();
