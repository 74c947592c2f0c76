#include "blindgrover/grover.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace blindgrover {

namespace {

void check_target(std::string_view target, int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("supported search width is 1..8 qubits");
    if (static_cast<int>(target.size()) != n) {
        throw std::invalid_argument("target width must equal qubit count");
    }
    for (char c : target) {
        if (c != '0' && c != '1') throw std::invalid_argument("target must be a 0/1 string");
    }
}

int kick_wire(int n) { return n; }
int work_wire(int n, int j) { return n + 1 + j; }

void append_x_pattern(std::vector<GateJob>& jobs, std::string_view target) {
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] == '0') jobs.push_back({GateKind::X, {static_cast<int>(i)}});
    }
}

// Phase flip of the all-ones pattern on data wires 0..n-1 through the
// kickback ancilla: a Toffoli ladder into clean work ancillas, uncomputed
// on the way back. The kickback wire holds |1> between invocations; the
// surrounding H pair turns the Toffoli's X into a sign.
void append_kickback_flip(std::vector<GateJob>& jobs, int n) {
    const int kick = kick_wire(n);
    if (n == 1) {
        jobs.push_back({GateKind::CZ, {0, kick}});
        return;
    }
    jobs.push_back({GateKind::H, {kick}});
    if (n == 2) {
        jobs.push_back({GateKind::TOFFOLI, {0, 1, kick}});
    } else {
        jobs.push_back({GateKind::TOFFOLI, {0, 1, work_wire(n, 0)}});
        for (int j = 1; j <= n - 3; ++j) {
            jobs.push_back({GateKind::TOFFOLI, {work_wire(n, j - 1), j + 1, work_wire(n, j)}});
        }
        jobs.push_back({GateKind::TOFFOLI, {work_wire(n, n - 3), n - 1, kick}});
        for (int j = n - 3; j >= 1; --j) {
            jobs.push_back({GateKind::TOFFOLI, {work_wire(n, j - 1), j + 1, work_wire(n, j)}});
        }
        jobs.push_back({GateKind::TOFFOLI, {0, 1, work_wire(n, 0)}});
    }
    jobs.push_back({GateKind::H, {kick}});
}

} // namespace

std::vector<GateJob> build_oracle(std::string_view target, int n) {
    check_target(target, n);
    std::vector<GateJob> jobs;
    append_x_pattern(jobs, target);
    append_kickback_flip(jobs, n);
    append_x_pattern(jobs, target);
    return jobs;
}

std::vector<GateJob> build_diffusion(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("supported search width is 1..8 qubits");
    std::vector<GateJob> jobs;
    for (int i = 0; i < n; ++i) jobs.push_back({GateKind::H, {i}});
    for (int i = 0; i < n; ++i) jobs.push_back({GateKind::X, {i}});
    if (n == 1) {
        jobs.push_back({GateKind::Z, {0}});
    } else if (n == 2) {
        jobs.push_back({GateKind::CZ, {0, 1}});
    } else {
        append_kickback_flip(jobs, n);
    }
    for (int i = 0; i < n; ++i) jobs.push_back({GateKind::X, {i}});
    for (int i = 0; i < n; ++i) jobs.push_back({GateKind::H, {i}});
    return jobs;
}

GroverCircuit build_grover(std::string_view target) {
    const int n = static_cast<int>(target.size());
    check_target(target, n);
    GroverCircuit c;
    c.n = n;
    c.target = target;
    const double big_n = std::ldexp(1.0, n);
    c.iterations = std::max(
        1, static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(big_n))));
    for (int k = 0; k < c.iterations; ++k) {
        const int first = static_cast<int>(c.jobs.size());
        for (auto& j : build_oracle(target, n)) c.jobs.push_back(std::move(j));
        c.oracle_spans.push_back({first, static_cast<int>(c.jobs.size())});
        for (auto& j : build_diffusion(n)) c.jobs.push_back(std::move(j));
    }
    return c;
}

namespace {

StateVector with_ancillas(const GroverCircuit& c, const StateVector& data) {
    StateVector full = tensor(data, basis_state(1, "1"));
    for (int j = 0; j < c.work_count(); ++j) full = tensor(full, basis_state(1, "0"));
    return full;
}

void verify_ancillas_restored(const GroverCircuit& c, const StateVector& full) {
    const int kick = c.kickback_wire();
    double p = marginal_probability(full, std::span<const int>(&kick, 1), "1");
    if (p < 1.0 - kAmpTolerance) throw std::logic_error("kickback ancilla not restored");
    for (int j = 0; j < c.work_count(); ++j) {
        const int w = c.n + 1 + j;
        p = marginal_probability(full, std::span<const int>(&w, 1), "0");
        if (p < 1.0 - kAmpTolerance) throw std::logic_error("work ancilla not restored");
    }
}

std::string sample_data_bits(const GroverCircuit& c, StateVector state, Prng& rng) {
    std::string bits;
    for (int q = 0; q < c.n; ++q) {
        MeasurementOutcome m = measure_qubit(state, q, rng);
        bits += m.bit ? '1' : '0';
        state = std::move(m.post_state);
    }
    return bits;
}

double target_probability(const GroverCircuit& c, const StateVector& full) {
    std::vector<int> data(c.n);
    for (int i = 0; i < c.n; ++i) data[i] = i;
    return marginal_probability(full, data, c.target);
}

} // namespace

SearchResult run_plain(const GroverCircuit& c, const StateVector& input, Prng& rng) {
    if (input.qubit_count() != c.n) {
        throw std::invalid_argument("input width must equal the circuit's data width");
    }
    StateVector full = with_ancillas(c, input);
    for (const GateJob& job : c.jobs) {
        full = apply_unitary(full, gate_matrix(job.gate), std::span<const int>(job.wires));
    }
    verify_ancillas_restored(c, full);
    SearchResult res;
    res.success_probability = target_probability(c, full);
    res.oracle_calls = c.iterations;
    res.measured_bits = sample_data_bits(c, full, rng);
    return res;
}

BlindSearchOutcome run_blind(const GroverCircuit& c, const StateVector& encrypted_input,
                             const PauliKey& key, Prng& rng, const ProtocolOptions& opts) {
    if (encrypted_input.qubit_count() != c.n || key.width() != c.n) {
        throw std::invalid_argument("encrypted input and key must cover the data wires");
    }
    // The key center appends the ancillas unencrypted.
    StateVector state = with_ancillas(c, encrypted_input);
    PauliKey full_key = key;
    for (int j = 0; j < 1 + c.work_count(); ++j) full_key.pairs.push_back({0, 0});

    BlindSearchOutcome out;
    for (const GateJob& job : c.jobs) {
        BlindGateResult r = execute_gate_blind(job, state, full_key, rng, opts);
        state = std::move(r.state);
        full_key = std::move(r.dk);
        out.transcript.append(r.transcript);
    }

    const StateVector decrypted = decrypt(state, full_key);
    verify_ancillas_restored(c, decrypted);
    out.dk = std::move(full_key);
    out.result.success_probability = target_probability(c, decrypted);
    out.result.oracle_calls = c.iterations;
    out.result.measured_bits = sample_data_bits(c, decrypted, rng);
    return out;
}

std::string format_jobs(std::span<const GateJob> jobs) {
    std::ostringstream os;
    for (const GateJob& j : jobs) {
        os << gate_name(j.gate);
        for (int w : j.wires) os << ' ' << w;
        os << '\n';
    }
    return os.str();
}

std::vector<GateJob> parse_jobs(std::string_view text) {
    std::vector<GateJob> jobs;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        GateJob job;
        job.gate = gate_from_name(name);
        int w;
        while (ls >> w) job.wires.push_back(w);
        if (static_cast<int>(job.wires.size()) != gate_arity(job.gate)) {
            throw std::invalid_argument("wrong wire count in circuit line: " + line);
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

} // namespace blindgrover
