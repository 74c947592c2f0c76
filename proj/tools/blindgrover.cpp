#include "blindgrover/parties.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace blindgrover;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("BLINDGROVER_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int cmd_demo(std::uint64_t seed, const std::string& eve, int decoys, bool records) {
    ScenarioConfig cfg;
    cfg.n = 2;
    cfg.target = "01";
    cfg.seed = seed;
    cfg.decoys.m = decoys;
    cfg.eve.mode = eve == "intercept" ? EavesdropMode::InterceptResend : EavesdropMode::None;

    const ScenarioReport rep = run_scenario(cfg);
    if (!records) {
        std::cout << "# searchable-encryption demo: query " << cfg.target << " over the "
                  << (1 << cfg.n) << "-item set, decoys=" << decoys << "\n";
    }
    std::cout << "EK " << key_to_hex(rep.ek) << '\n';
    std::cout << "DK " << key_to_hex(rep.dk) << '\n';
    std::cout << "TRANSCRIPT_LEN " << rep.transcript.size() << '\n';
    std::cout << "TRANSCRIPT_ROUNDS " << rep.transcript.rotation_count() << '\n';
    std::cout << rep.serialize();
    if (!rep.completed) {
        std::cout << "ABORTED true\n";
    }
    if (rep.detection_flag) return kExitOk; // tampering caught: protocol worked
    return rep.result_bits == cfg.target ? kExitOk : kExitCheckFailed;
}

bool blind_gate_equivalent(GateKind g, Prng& rng) {
    const int arity = gate_arity(g);
    const int width = arity; // tightest register exercising the gate
    for (int trial = 0; trial < 6; ++trial) {
        StateVector plain(width);
        // pseudo-random plaintext: a few layers of rotations
        for (int q = 0; q < width; ++q) {
            plain = apply_unitary(
                plain, rotation_matrix(RotationAxis::Y, rng.real01() * 6.28), {q});
            plain = apply_unitary(
                plain, rotation_matrix(RotationAxis::Z, rng.real01() * 6.28), {q});
        }
        PauliKey key = keygen(width, rng);
        StateVector cipher = encrypt(plain, key);
        GateJob job{g, {}};
        for (int q = 0; q < arity; ++q) job.wires.push_back(q);
        BlindGateResult res = execute_gate_blind(job, cipher, key, rng);
        const StateVector got = decrypt(res.state, res.dk);
        const StateVector want =
            apply_unitary(plain, gate_matrix(g), std::span<const int>(job.wires));
        if (fidelity(got, want) < 1.0 - kAmpTolerance) return false;
    }
    return true;
}

int cmd_gate_check(const std::string& only_gate, bool mutate, bool dump,
                   std::uint64_t seed) {
    Prng rng(seed);
    bool all_ok = true;
    for (GateKind g : kAllGates) {
        if (!only_gate.empty() && gate_name(g) != only_gate) continue;
        if (dump) {
            for (const auto& ins : decomposition(g).sequence) {
                std::cout << gate_name(g) << ' ' << format_instruction(ins) << '\n';
            }
            continue;
        }
        bool ok;
        if (mutate) {
            DecompositionEntry bad = decomposition(g);
            bad.sequence.front().quarter_turns += 1; // corrupt one table entry
            ok = verify_decomposition_entry(bad);
        } else {
            ok = verify_decomposition(g) && blind_gate_equivalent(g, rng);
        }
        all_ok = all_ok && ok;
        std::cout << gate_name(g) << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    }
    return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_grover(int n, const std::string& target, bool blind, std::uint64_t seed,
               const std::string& emit_path) {
    if (static_cast<int>(target.size()) != n) {
        std::cerr << "error: target width must equal --n\n";
        return kExitUsage;
    }
    if (n < 1 || n > 8 || (blind && n > 4)) {
        std::cerr << "error: supported widths are 1..8 plain, 1..4 blind\n";
        return kExitUsage;
    }
    Prng rng(seed);
    const GroverCircuit circuit = build_grover(target);
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        out << format_jobs(circuit.jobs);
    }

    std::cout << "SEED " << seed << '\n';
    std::cout << "ORACLE_CALLS " << circuit.iterations << '\n';
    if (blind) {
        PauliKey key = keygen(n, rng);
        StateVector cipher = encrypt(plus_state(n), key);
        const BlindSearchOutcome out = run_blind(circuit, cipher, key, rng);
        std::cout << "P_SUCCESS " << fmt9(out.result.success_probability) << '\n';
        std::cout << "RESULT bits=" << out.result.measured_bits << '\n';
        std::cout << "DK " << key_to_hex(out.dk) << '\n';
        std::cout << "TRANSCRIPT_LEN " << out.transcript.size() << '\n';
    } else {
        const SearchResult res = run_plain(circuit, plus_state(n), rng);
        std::cout << "P_SUCCESS " << fmt9(res.success_probability) << '\n';
        std::cout << "RESULT bits=" << res.measured_bits << '\n';
    }
    return kExitOk;
}

int cmd_eavesdrop(int m, int trials, std::uint64_t seed) {
    if (trials < 1) {
        std::cerr << "error: --trials must be at least 1\n";
        return kExitUsage;
    }
    Prng rng(seed);
    const StateVector payload = plus_state(2);
    int detected = 0;
    for (int t = 0; t < trials; ++t) {
        auto [batch, record] = add_decoys(payload, DecoyConfig{m}, rng);
        batch = eve_intercept_resend(batch, rng);
        const DecoyCheckResult check = check_decoys(batch, record, rng);
        if (!check.pass) ++detected;
    }
    const double rate = static_cast<double>(detected) / trials;
    std::cout << "SEED " << seed << '\n';
    std::cout << "M " << m << '\n';
    std::cout << "TRIALS " << trials << '\n';
    std::cout << "RATE_EMPIRICAL " << fmt6(rate) << '\n';
    std::cout << "RATE_ANALYTIC " << fmt6(analytic_detection_rate(m)) << '\n';
    return kExitOk;
}

int cmd_transcript(const std::string& target, std::uint64_t seed, bool summary,
                   const std::string& out_path) {
    const int n = static_cast<int>(target.size());
    if (n < 1 || n > 4) {
        std::cerr << "error: blind transcripts support widths 1..4\n";
        return kExitUsage;
    }
    Prng rng(seed);
    const GroverCircuit circuit = build_grover(target);
    PauliKey key = keygen(n, rng);
    StateVector cipher = encrypt(plus_state(n), key);
    const BlindSearchOutcome out = run_blind(circuit, cipher, key, rng);

    if (summary) {
        std::map<std::string, int> rot_counts;
        int xfers = 0;
        for (const auto& e : out.transcript.events) {
            if (const auto* r = std::get_if<RotEvent>(&e)) {
                std::string k{axis_letter(r->axis)};
                k += std::to_string(r->control_arity);
                ++rot_counts[k];
            } else {
                ++xfers;
            }
        }
        std::cout << "EVENTS " << out.transcript.size() << '\n';
        std::cout << "ROUNDS " << out.transcript.rotation_count() << '\n';
        std::cout << "XFERS " << xfers << '\n';
        for (const auto& [k, v] : rot_counts) std::cout << "ROT_" << k << ' ' << v << '\n';
        return kExitOk;
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << out.transcript.serialize();
    } else {
        std::cout << out.transcript.serialize();
    }
    return kExitOk;
}

int cmd_circuit(const std::string& path, bool blind, std::uint64_t seed,
                const std::string& input_bits) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot open " << path << '\n';
        return kExitUsage;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    const std::vector<GateJob> jobs = parse_jobs(buf.str());
    int width = 0;
    for (const GateJob& j : jobs) {
        for (int w : j.wires) width = std::max(width, w + 1);
    }
    if (!input_bits.empty()) width = std::max(width, static_cast<int>(input_bits.size()));
    if (width == 0) {
        std::cerr << "error: empty circuit\n";
        return kExitUsage;
    }
    std::string bits = input_bits.empty() ? std::string(width, '0') : input_bits;

    Prng rng(seed);
    StateVector state = basis_state(width, bits);
    Transcript transcript;
    PauliKey dk;
    if (blind) {
        PauliKey key = keygen(width, rng);
        state = encrypt(state, key);
        for (const GateJob& job : jobs) {
            BlindGateResult r = execute_gate_blind(job, state, key, rng);
            state = std::move(r.state);
            key = std::move(r.dk);
            transcript.append(r.transcript);
        }
        dk = key;
        state = decrypt(state, dk);
    } else {
        for (const GateJob& job : jobs) {
            state = apply_unitary(state, gate_matrix(job.gate),
                                  std::span<const int>(job.wires));
        }
    }
    std::string sampled;
    StateVector s = state;
    for (int q = 0; q < width; ++q) {
        MeasurementOutcome m = measure_qubit(s, q, rng);
        sampled += m.bit ? '1' : '0';
        s = std::move(m.post_state);
    }
    std::cout << "SEED " << seed << '\n';
    std::cout << "GATES " << jobs.size() << '\n';
    std::cout << "RESULT bits=" << sampled << '\n';
    if (blind) {
        std::cout << "DK " << key_to_hex(dk) << '\n';
        std::cout << "TRANSCRIPT_LEN " << transcript.size() << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum one-time-pad blind computation and encrypted Grover search"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed_flag;

    auto* demo = app.add_subcommand("demo", "run the 2-qubit encrypted search end to end");
    std::string demo_eve = "none";
    int demo_decoys = 0;
    bool demo_records = false;
    demo->add_option("--seed", seed_flag, "seed (fallback: BLINDGROVER_SEED, then 0)");
    demo->add_option("--eve", demo_eve, "none|intercept")
        ->check(CLI::IsMember({"none", "intercept"}));
    demo->add_option("--decoys", demo_decoys, "decoy qubits on the protected hand-off");
    demo->add_flag("--records", demo_records, "machine-readable records only");

    auto* gate_check =
        app.add_subcommand("gate-check", "verify the rotation tables and blind execution");
    std::string gc_gate;
    bool gc_mutate = false, gc_dump = false;
    gate_check->add_option("--gate", gc_gate, "check a single gate (X, Z, H, S, T, CNOT, CZ, TOFFOLI)");
    gate_check->add_flag("--mutate", gc_mutate, "corrupt one table entry (self-test hook)");
    gate_check->add_flag("--dump", gc_dump, "dump the decomposition tables");
    gate_check->add_option("--seed", seed_flag, "seed");

    auto* grover = app.add_subcommand("grover", "run a Grover search, plain or blind");
    int gr_n = 2;
    std::string gr_target = "01", gr_emit;
    bool gr_blind = false;
    grover->add_option("--n", gr_n, "data qubits (1..8 plain, 1..4 blind)");
    grover->add_option("--target", gr_target, "target bitstring")->required();
    grover->add_flag("--blind", gr_blind, "run through the blind engine");
    grover->add_option("--seed", seed_flag, "seed");
    grover->add_option("--emit", gr_emit, "write the circuit file here");

    auto* eavesdrop =
        app.add_subcommand("eavesdrop", "intercept-resend detection statistics");
    int ev_m = 4, ev_trials = 10000;
    eavesdrop->add_option("--m", ev_m, "decoy qubits per transfer");
    eavesdrop->add_option("--trials", ev_trials, "number of trials");
    eavesdrop->add_option("--seed", seed_flag, "seed");

    auto* transcript =
        app.add_subcommand("transcript", "emit the server-side transcript of a blind search");
    std::string tr_target = "01", tr_out;
    bool tr_summary = false;
    transcript->add_option("--target", tr_target, "target bitstring (width 1..4)");
    transcript->add_option("--seed", seed_flag, "seed");
    transcript->add_option("--out", tr_out, "write to a file instead of stdout");
    transcript->add_flag("--summary", tr_summary, "event counts instead of full lines");

    auto* circuit = app.add_subcommand("circuit", "run a circuit file, plain or blind");
    std::string ci_file, ci_input;
    bool ci_blind = false;
    circuit->add_option("--file", ci_file, "circuit file")->required();
    circuit->add_flag("--blind", ci_blind, "run through the blind engine");
    circuit->add_option("--input", ci_input, "initial basis state (default all zeros)");
    circuit->add_option("--seed", seed_flag, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    const std::uint64_t seed = resolve_seed(seed_flag);
    try {
        if (demo->parsed()) return cmd_demo(seed, demo_eve, demo_decoys, demo_records);
        if (gate_check->parsed()) return cmd_gate_check(gc_gate, gc_mutate, gc_dump, seed);
        if (grover->parsed()) return cmd_grover(gr_n, gr_target, gr_blind, seed, gr_emit);
        if (eavesdrop->parsed()) return cmd_eavesdrop(ev_m, ev_trials, seed);
        if (transcript->parsed()) return cmd_transcript(tr_target, seed, tr_summary, tr_out);
        if (circuit->parsed()) return cmd_circuit(ci_file, ci_blind, seed, ci_input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}
