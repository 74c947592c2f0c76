#include "blindgrover/parties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blindgrover {

std::string_view party_name(PartyId p) {
    switch (p) {
        case PartyId::Alice1: return "alice1";
        case PartyId::Alice2: return "alice2";
        case PartyId::Bob: return "bob";
        case PartyId::Charlie: return "charlie";
        case PartyId::Eve: return "eve";
    }
    throw std::logic_error("unknown party");
}

std::uint64_t Channel::register_payload(PartyId owner) {
    const std::uint64_t id = next_id_++;
    owners_.push_back({id, owner});
    return id;
}

PartyId Channel::owner_of(std::uint64_t payload_id) const {
    for (const auto& [id, owner] : owners_) {
        if (id == payload_id) return owner;
    }
    throw std::invalid_argument("unknown payload id");
}

void Channel::send(Message msg) {
    if (msg.payload) {
        bool found = false;
        for (auto& [id, owner] : owners_) {
            if (id == msg.payload->id) {
                found = true;
                if (owner != msg.from) ownership_violated_ = true;
                owner = msg.to;
            }
        }
        if (!found) ownership_violated_ = true;
    }
    log_.push_back(std::move(msg));
}

namespace {

// Single-qubit BB84 encoding: basis 0 = Z, basis 1 = X.
StateVector bb84_encode(int bit, int basis) {
    StateVector q = basis_state(1, bit ? "1" : "0");
    if (basis) q = apply_unitary(q, gate_matrix(GateKind::H), {0});
    return q;
}

int measure_in_basis(StateVector& q, int basis, Prng& rng) {
    if (basis) q = apply_unitary(q, gate_matrix(GateKind::H), {0});
    MeasurementOutcome m = measure_qubit(q, 0, rng);
    q = std::move(m.post_state);
    if (basis) q = apply_unitary(q, gate_matrix(GateKind::H), {0});
    return m.bit;
}

} // namespace

Bb84Result bb84_transport(std::span<const int> bits, const EavesdropPolicy& eve, Prng& rng,
                          double sacrifice_fraction) {
    Bb84Result res;
    std::vector<int> sift_sender, sift_receiver;
    for (int bit : bits) {
        const int sbasis = rng.bit();
        StateVector q = bb84_encode(bit, sbasis);
        if (eve.mode == EavesdropMode::InterceptResend) {
            (void)measure_in_basis(q, rng.bit(), rng);
        }
        const int rbasis = rng.bit();
        const int outcome = measure_in_basis(q, rbasis, rng);
        if (sbasis == rbasis) {
            sift_sender.push_back(bit);
            sift_receiver.push_back(outcome);
        }
    }
    res.sifted_count = static_cast<int>(sift_sender.size());

    // Sacrifice a fixed fraction of the sifted positions for error sampling.
    const int compare_count =
        static_cast<int>(std::llround(sacrifice_fraction * res.sifted_count));
    std::vector<int> order(sift_sender.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.next_below(i)]);
    }
    res.compared_count = compare_count;
    std::vector<bool> sacrificed(sift_sender.size(), false);
    for (int k = 0; k < compare_count; ++k) {
        const int pos = order[k];
        sacrificed[pos] = true;
        if (sift_sender[pos] != sift_receiver[pos]) ++res.error_count;
    }
    res.error_rate =
        compare_count > 0 ? static_cast<double>(res.error_count) / compare_count : 0.0;
    res.aborted = res.error_count > 0;

    for (std::size_t i = 0; i < sift_sender.size(); ++i) {
        if (!sacrificed[i]) res.delivered.push_back(sift_receiver[i]);
    }
    return res;
}

std::pair<StateVector, DecoyRecord> add_decoys(const StateVector& payload,
                                               const DecoyConfig& cfg, Prng& rng) {
    if (cfg.m < 0) throw std::invalid_argument("decoy count must be non-negative");
    DecoyRecord record;
    if (cfg.m == 0) return {payload, record};

    const int total = payload.qubit_count() + cfg.m;
    std::vector<int> all(total);
    for (int i = 0; i < total; ++i) all[i] = i;
    for (int i = total; i > 1; --i) std::swap(all[i - 1], all[rng.next_below(i)]);
    std::vector<int> positions(all.begin(), all.begin() + cfg.m);
    std::sort(positions.begin(), positions.end());

    StateVector out = payload;
    for (int pos : positions) {
        const auto p = static_cast<TrapPlaintext>(rng.next_below(4));
        out = tensor(out, trap_plaintext_state(p));
        out = move_qubit(out, out.qubit_count() - 1, pos);
        record.entries.push_back({pos, p});
    }
    return {out, record};
}

DecoyCheckResult check_decoys(const StateVector& batch, const DecoyRecord& announce,
                              Prng& rng) {
    DecoyCheckResult res;
    res.payload = batch;
    res.outcomes_match.assign(announce.entries.size(), 0);
    for (std::size_t k = announce.entries.size(); k > 0; --k) {
        const auto& entry = announce.entries[k - 1];
        if (entry.position < 0 || entry.position >= res.payload.qubit_count()) {
            throw std::out_of_range("decoy position out of range");
        }
        StateVector s = res.payload;
        int expected;
        if (trap_is_z_basis(entry.state)) {
            expected = entry.state == TrapPlaintext::One ? 1 : 0;
        } else {
            s = apply_unitary(s, gate_matrix(GateKind::H), {entry.position});
            expected = entry.state == TrapPlaintext::Minus ? 1 : 0;
        }
        MeasurementOutcome m = measure_qubit(s, entry.position, rng);
        res.outcomes_match[k - 1] = m.bit == expected ? 1 : 0;
        res.payload = discard_qubit(m.post_state, entry.position);
    }
    res.pass = std::all_of(res.outcomes_match.begin(), res.outcomes_match.end(),
                           [](int v) { return v == 1; });
    return res;
}

StateVector eve_intercept_resend(const StateVector& batch, Prng& rng) {
    StateVector s = batch;
    for (int q = 0; q < batch.qubit_count(); ++q) {
        const int basis = rng.bit();
        if (basis) s = apply_unitary(s, gate_matrix(GateKind::H), {q});
        MeasurementOutcome m = measure_qubit(s, q, rng);
        s = std::move(m.post_state);
        if (basis) s = apply_unitary(s, gate_matrix(GateKind::H), {q});
    }
    return s;
}

double analytic_detection_rate(int m) { return 1.0 - std::pow(0.75, m); }

namespace {

// Delivers `count` agreed random bits over BB84, feeding fresh raw bits
// until enough survive sifting and sampling.
std::vector<int> bb84_random_bits(int count, Prng& rng) {
    std::vector<int> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<int> raw(8 * count + 64);
        for (int& b : raw) b = rng.bit();
        Bb84Result r = bb84_transport(raw, {}, rng);
        for (int b : r.delivered) out.push_back(b);
    }
    out.resize(count);
    return out;
}

PauliKey key_from_bits(std::span<const int> bits, int n) {
    PauliKey k;
    for (int i = 0; i < n; ++i) k.pairs.push_back({bits[2 * i], bits[2 * i + 1]});
    return k;
}

std::vector<int> key_bits(const PauliKey& k) {
    std::vector<int> bits;
    for (const auto& p : k.pairs) {
        bits.push_back(p.x);
        bits.push_back(p.z);
    }
    return bits;
}

} // namespace

std::string ScenarioReport::serialize() const {
    std::ostringstream os;
    os << "RESULT bits=" << (result_bits.empty() ? "-" : result_bits) << '\n';
    os << "DETECTED " << (detection_flag ? "true" : "false") << '\n';
    os << "ORACLE_CALLS " << oracle_calls << '\n';
    os << "SEED " << seed << '\n';
    return os.str();
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    const int n = cfg.n;
    if (static_cast<int>(cfg.target.size()) != n) {
        throw std::invalid_argument("query width must match the data item width");
    }

    Prng rng(cfg.seed);
    Channel ch;
    ScenarioReport report;
    report.seed = cfg.seed;

    const GroverCircuit circuit = build_grover(cfg.target);
    report.oracle_calls = circuit.iterations;

    // Step 1: the owner announces the register width.
    ch.send({MessageKind::KeyRequest, PartyId::Alice1, PartyId::Charlie, {n}, "", {}});

    const StateVector plain = plus_state(n);

    StateVector at_bob(1);
    PauliKey full_key;
    bool handed_off = false;
    std::uint64_t register_id = 0;

    for (int attempt = 0; attempt <= cfg.max_resends && !handed_off; ++attempt) {
        // Step 2: encryption key delivered over BB84.
        const std::vector<int> ek_bits = bb84_random_bits(2 * n, rng);
        report.ek = key_from_bits(ek_bits, n);
        ch.send({MessageKind::KeyReply, PartyId::Charlie, PartyId::Alice1, ek_bits, "", {}});

        // Step 3: the owner uploads the encrypted register. One payload id
        // follows the physical qubits through the whole scenario.
        StateVector cipher = encrypt(plain, report.ek);
        register_id = ch.register_payload(PartyId::Alice1);
        ch.send({MessageKind::CiphertextUpload, PartyId::Alice1, PartyId::Bob, {}, "",
                 QuantumPayload{register_id, {cipher}}});

        // Step 4: the searcher asks for a query; the key center pulls the
        // ciphertext, appends the ancillas and hands the register back to
        // the data center under decoy protection.
        if (attempt == 0) {
            ch.send({MessageKind::SearchRequest, PartyId::Alice2, PartyId::Charlie, {},
                     cfg.target, {}});
        }
        ch.send({MessageKind::QubitBatch, PartyId::Bob, PartyId::Charlie, {}, "",
                 QuantumPayload{register_id, {cipher}}});

        StateVector reg = tensor(cipher, basis_state(1, "1"));
        for (int j = 0; j < circuit.work_count(); ++j) reg = tensor(reg, basis_state(1, "0"));
        full_key = report.ek;
        for (int j = 0; j < 1 + circuit.work_count(); ++j) full_key.pairs.push_back({0, 0});

        auto [augmented, record] = add_decoys(reg, cfg.decoys, rng);
        ch.send({MessageKind::QubitBatch, PartyId::Charlie, PartyId::Bob, {}, "",
                 QuantumPayload{register_id, {augmented}}});

        if (cfg.eve.mode == EavesdropMode::InterceptResend) {
            augmented = eve_intercept_resend(augmented, rng);
        }

        std::vector<int> announce_bits;
        for (const auto& e : record.entries) {
            announce_bits.push_back(e.position);
            announce_bits.push_back(static_cast<int>(e.state));
        }
        ch.send({MessageKind::DecoyAnnounce, PartyId::Charlie, PartyId::Bob, announce_bits,
                 "", {}});

        DecoyCheckResult check = check_decoys(augmented, record, rng);
        report.decoy_checks.push_back(check.pass ? 1 : 0);
        ch.send({MessageKind::ClassicalBit, PartyId::Bob, PartyId::Charlie,
                 {check.pass ? 1 : 0}, "", {}});

        if (check.pass) {
            at_bob = check.payload;
            handed_off = true;
        } else {
            report.detection_flag = true; // owner re-encrypts and resends
        }
    }

    report.ownership_ok = !ch.ownership_violated();
    for (const Message& m : ch.log()) {
        const bool bob_edge = m.from == PartyId::Bob || m.to == PartyId::Bob;
        const bool key_bearing =
            m.kind == MessageKind::KeyReply || m.kind == MessageKind::Result;
        if (bob_edge && key_bearing) report.key_hygiene_ok = false;
    }

    if (!handed_off) {
        report.completed = false;
        report.message_log = ch.log();
        return report; // hard abort after exhausting resends
    }

    // Blind search execution, one gate at a time.
    for (const GateJob& job : circuit.jobs) {
        BlindGateResult r = execute_gate_blind(job, at_bob, full_key, rng, cfg.protocol);
        at_bob = std::move(r.state);
        full_key = std::move(r.dk);
        report.transcript.append(r.transcript);
    }
    report.dk = full_key;

    // Step 5: result and decryption key to the searcher; the key rides a
    // fresh BB84-established pad, never a server-facing edge.
    const std::vector<int> dkb = key_bits(full_key);
    const std::vector<int> pad = bb84_random_bits(static_cast<int>(dkb.size()), rng);
    std::vector<int> masked(dkb.size());
    for (std::size_t i = 0; i < dkb.size(); ++i) masked[i] = dkb[i] ^ pad[i];
    ch.send({MessageKind::QubitBatch, PartyId::Bob, PartyId::Charlie, {}, "",
             QuantumPayload{register_id, {at_bob}}});
    ch.send({MessageKind::Result, PartyId::Charlie, PartyId::Alice2, masked, "",
             QuantumPayload{register_id, {at_bob}}});

    // Step 6: the searcher decrypts and drops the ancillas.
    StateVector decrypted = decrypt(at_bob, full_key);
    std::string bits;
    if (cfg.eve.mode == EavesdropMode::None) {
        // Honest channel: ancillas come back clean and can be dropped.
        for (int w = decrypted.qubit_count() - 1; w >= n; --w) {
            decrypted = discard_qubit(decrypted, w);
        }
    }
    StateVector s = decrypted;
    for (int q = 0; q < n; ++q) {
        MeasurementOutcome m = measure_qubit(s, q, rng);
        bits += m.bit ? '1' : '0';
        s = std::move(m.post_state);
    }
    report.result_bits = bits;
    report.completed = true;
    report.ownership_ok = !ch.ownership_violated();
    report.message_log = ch.log();
    return report;
}

} // namespace blindgrover
