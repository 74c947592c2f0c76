#include "blindgrover/gates.hpp"
#include "blindgrover/pauli_otp.hpp"

#include <benchmark/benchmark.h>

using namespace blindgrover;

static void BM_ApplySingleQubitGate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector s = plus_state(n);
    const UnitaryMatrix h = gate_matrix(GateKind::H);
    for (auto _ : state) {
        s = apply_unitary(s, h, {0});
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ApplySingleQubitGate)->Arg(4)->Arg(8)->Arg(12);

static void BM_ApplyToffoli(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector s = plus_state(n);
    const UnitaryMatrix tof = gate_matrix(GateKind::TOFFOLI);
    for (auto _ : state) {
        s = apply_unitary(s, tof, {0, 1, 2});
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ApplyToffoli)->Arg(4)->Arg(8)->Arg(12);

static void BM_EncryptDecrypt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Prng rng(7);
    const PauliKey key = keygen(n, rng);
    StateVector s = plus_state(n);
    for (auto _ : state) {
        s = decrypt(encrypt(s, key), key);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_EncryptDecrypt)->Arg(4)->Arg(8);

static void BM_VerifyDecompositions(benchmark::State& state) {
    for (auto _ : state) {
        bool ok = true;
        for (GateKind g : kAllGates) ok &= verify_decomposition(g);
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_VerifyDecompositions);

BENCHMARK_MAIN();
