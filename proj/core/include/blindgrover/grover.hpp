#pragma once

#include "blindgrover/blind_engine.hpp"

#include <string>
#include <utility>
#include <vector>

namespace blindgrover {

// Grover search circuit over the eight-gate set. Data wires come first,
// then one phase-kickback ancilla (prepared |1>), then max(0, n-2) clean
// work ancillas (prepared |0>) for the Toffoli ladder. The initial H
// layer is not part of the job list; inputs are assumed to already be the
// uniform superposition on the data wires.
struct GroverCircuit {
    int n = 0;                  // data qubits
    std::string target;         // length n
    std::vector<GateJob> jobs;  // full circuit, ancilla wires included
    int iterations = 0;         // == floor((pi/4) * sqrt(2^n)), min 1
    // [first, last) job index range of each oracle invocation.
    std::vector<std::pair<int, int>> oracle_spans;

    int kickback_wire() const { return n; }
    int work_count() const { return n >= 3 ? n - 2 : 0; }
    int total_wires() const { return n + 1 + work_count(); }
};

struct SearchResult {
    std::string measured_bits;
    double success_probability = 0.0;
    int oracle_calls = 0;
};

// Phase-flip oracle for `target`: X layer on the zero bits, a
// multi-controlled flip through the kickback ancilla (CZ for n=1, a
// Toffoli for n=2, a Toffoli ladder with uncomputed work ancillas for
// n>=3), X layer undone. Supported for 1 <= n <= 8.
std::vector<GateJob> build_oracle(std::string_view target, int n);

// Inversion about the mean on the data wires: H layer, X layer,
// multi-controlled phase flip, X layer, H layer.
std::vector<GateJob> build_diffusion(int n);

GroverCircuit build_grover(std::string_view target);

// Runs the circuit directly on `input` (data wires only; ancillas are
// prepared and verified restored internally). success_probability is the
// exact amplitude mass on the target, not a sampled estimate.
SearchResult run_plain(const GroverCircuit& c, const StateVector& input, Prng& rng);

struct BlindSearchOutcome {
    SearchResult result; // computed on the decrypted final state
    PauliKey dk;
    Transcript transcript;
};

// Feeds every job through execute_gate_blind. Decrypting the final state
// with dk matches run_plain's final state up to global phase.
BlindSearchOutcome run_blind(const GroverCircuit& c, const StateVector& encrypted_input,
                             const PauliKey& key, Prng& rng,
                             const ProtocolOptions& opts = {});

// Circuit file format: one gate per line (`H 0`, `CNOT 0 1`,
// `TOFFOLI 0 1 2`), `#` comments and blank lines allowed.
std::string format_jobs(std::span<const GateJob> jobs);
std::vector<GateJob> parse_jobs(std::string_view text);

} // namespace blindgrover
