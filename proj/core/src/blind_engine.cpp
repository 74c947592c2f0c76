#include "blindgrover/blind_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace blindgrover {

namespace {

constexpr int kRoundsPerUnit = 8; // one full 2*pi cycle of pi/4 steps

std::vector<RotationInstruction> expand_steps(std::span<const RotationInstruction> seq) {
    std::vector<RotationInstruction> steps;
    for (const RotationInstruction& ins : seq) {
        RotationInstruction one = ins;
        one.quarter_turns = 1;
        for (int k = 0; k < ins.quarter_turns; ++k) steps.push_back(one);
    }
    return steps;
}

} // namespace

std::size_t Transcript::rotation_count() const {
    std::size_t n = 0;
    for (const auto& e : events) {
        if (std::holds_alternative<RotEvent>(e)) ++n;
    }
    return n;
}

void Transcript::append(const Transcript& other) {
    events.insert(events.end(), other.events.begin(), other.events.end());
}

std::string Transcript::serialize() const {
    std::ostringstream os;
    for (const auto& e : events) {
        if (const auto* r = std::get_if<RotEvent>(&e)) {
            os << "ROT " << axis_letter(r->axis) << ' ' << r->control_arity;
            for (int s : r->slots) os << ' ' << s;
            os << '\n';
        } else {
            const auto& x = std::get<XferEvent>(e);
            os << "XFER " << (x.direction == XferDirection::In ? "in" : "out") << ' '
               << x.count << '\n';
        }
    }
    return os.str();
}

Transcript parse_transcript(std::string_view text) {
    Transcript t;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "ROT") {
            RotEvent r;
            std::string axis;
            ls >> axis >> r.control_arity;
            r.axis = axis == "y" ? RotationAxis::Y : RotationAxis::Z;
            int w;
            while (ls >> w) r.slots.push_back(w);
            t.events.emplace_back(std::move(r));
        } else if (tag == "XFER") {
            XferEvent x;
            std::string dir;
            ls >> dir >> x.count;
            x.direction = dir == "in" ? XferDirection::In : XferDirection::Out;
            t.events.emplace_back(x);
        } else {
            throw std::invalid_argument("unknown transcript line: " + line);
        }
    }
    return t;
}

StateVector trap_plaintext_state(TrapPlaintext p) {
    switch (p) {
        case TrapPlaintext::Zero: return basis_state(1, "0");
        case TrapPlaintext::One: return basis_state(1, "1");
        case TrapPlaintext::Plus: return plus_state(1);
        case TrapPlaintext::Minus: {
            StateVector s = plus_state(1);
            return apply_unitary(s, gate_matrix(GateKind::Z), {0});
        }
    }
    throw std::logic_error("unknown trap plaintext");
}

bool trap_is_z_basis(TrapPlaintext p) {
    return p == TrapPlaintext::Zero || p == TrapPlaintext::One;
}

TrapPlan insert_traps(const GateJob& job, Prng& rng) {
    const int arity = gate_arity(job.gate);
    if (static_cast<int>(job.wires.size()) != arity) {
        throw std::invalid_argument("job wire count does not match gate arity");
    }
    const int n_traps = 3 - arity;

    // Uniform permutation of the 3 batch slots.
    std::array<int, 3> occupant = {0, 1, 2}; // entity index: 0..arity-1 logical, rest traps
    for (int i = 2; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(occupant[i], occupant[j]);
    }

    TrapPlan plan;
    plan.slot_wire.assign(3, -1);
    plan.logical_slots.assign(arity, -1);
    for (int slot = 0; slot < 3; ++slot) {
        const int ent = occupant[slot];
        if (ent < arity) {
            plan.logical_slots[ent] = slot;
            plan.slot_wire[slot] = job.wires[ent];
        } else {
            plan.trap_slots.push_back(slot);
        }
    }
    for (int j = 0; j < n_traps; ++j) {
        TrapQubit t;
        t.plaintext = static_cast<TrapPlaintext>(rng.next_below(4));
        t.key = {rng.bit(), rng.bit()};
        plan.traps.push_back(t);
    }
    return plan;
}

TrapGateStream insert_trap_gates(std::span<const RotationInstruction> actual,
                                 const TrapPlan& plan, int trap_rounds, Prng& rng) {
    TrapGateStream out;
    std::vector<RotationInstruction> steps = expand_steps(actual);

    const int n_units = trap_rounds / kRoundsPerUnit;
    struct Unit {
        std::size_t position;
        std::vector<RotationInstruction> steps;
        TrapNetEffect effect;
    };
    std::vector<Unit> units;

    auto trap_index_of_slot = [&](int slot) {
        for (std::size_t k = 0; k < plan.trap_slots.size(); ++k) {
            if (plan.trap_slots[k] == slot) return static_cast<int>(k);
        }
        return -1;
    };

    for (int u = 0; u < n_units; ++u) {
        // Unit kinds, all full 2*pi cycles so the block's net effect is a
        // Pauli on trap wires tensor identity on the rest:
        //   single cycle on any slot            -> -I (global phase only)
        //   C-cycle, control = trap slot        -> Z on the control trap
        //   CC-cycle, controls = two trap slots -> CZ on the traps, legal
        //     when at least one control trap is a Z-basis dummy (the CZ
        //     then reduces to a tracked Z on the other control).
        enum Kind { Single, CtlTrap, CcTraps };
        std::vector<Kind> kinds = {Single};
        if (!plan.trap_slots.empty()) kinds.push_back(CtlTrap);
        if (plan.trap_slots.size() >= 2 &&
            (trap_is_z_basis(plan.traps[0].plaintext) ||
             trap_is_z_basis(plan.traps[1].plaintext))) {
            kinds.push_back(CcTraps);
        }
        const Kind kind = kinds[rng.next_below(kinds.size())];
        const RotationAxis axis = rng.bit() ? RotationAxis::Y : RotationAxis::Z;

        Unit unit;
        RotationInstruction ins;
        ins.axis = axis;
        ins.quarter_turns = 1;
        switch (kind) {
            case Single: {
                ins.control_arity = 0;
                ins.wires = {static_cast<int>(rng.next_below(3))};
                break;
            }
            case CtlTrap: {
                const int ctl = plan.trap_slots[rng.next_below(plan.trap_slots.size())];
                int tgt = static_cast<int>(rng.next_below(2));
                // any other slot
                std::vector<int> others;
                for (int s = 0; s < 3; ++s) {
                    if (s != ctl) others.push_back(s);
                }
                ins.control_arity = 1;
                ins.wires = {ctl, others[tgt]};
                unit.effect.z_flip_slot = ctl;
                break;
            }
            case CcTraps: {
                int zslot, other;
                if (trap_is_z_basis(plan.traps[0].plaintext)) {
                    zslot = plan.trap_slots[0];
                    other = plan.trap_slots[1];
                } else {
                    zslot = plan.trap_slots[1];
                    other = plan.trap_slots[0];
                }
                int tgt = 0;
                for (int s = 0; s < 3; ++s) {
                    if (s != zslot && s != other) tgt = s;
                }
                ins.control_arity = 2;
                ins.wires = {zslot, other, tgt};
                const TrapQubit& zq = plan.traps[trap_index_of_slot(zslot)];
                const int value =
                    (zq.plaintext == TrapPlaintext::One ? 1 : 0) ^ zq.key.x;
                if (value) unit.effect.z_flip_slot = other;
                break;
            }
        }
        unit.steps.assign(kRoundsPerUnit, ins);
        unit.position = rng.next_below(steps.size() + 1);
        units.push_back(std::move(unit));
    }

    // Insert blocks back to front so earlier positions stay valid.
    std::stable_sort(units.begin(), units.end(),
                     [](const Unit& a, const Unit& b) { return a.position > b.position; });
    for (const Unit& u : units) {
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(u.position),
                     u.steps.begin(), u.steps.end());
        out.effects.push_back(u.effect);
    }
    out.instructions = std::move(steps);
    return out;
}

std::vector<PauliKey::Pair> key_update(GateKind g, std::span<const PauliKey::Pair> in_bits,
                                       std::span<const int> aux) {
    if (static_cast<int>(in_bits.size()) != gate_arity(g)) {
        throw std::invalid_argument("key_update: bit count does not match gate arity");
    }
    switch (g) {
        case GateKind::X:
        case GateKind::Z: return {in_bits[0]};
        case GateKind::H: return {{in_bits[0].z, in_bits[0].x}};
        case GateKind::S: return {{in_bits[0].x, in_bits[0].x ^ in_bits[0].z}};
        case GateKind::T: {
            if (aux.size() < 3) {
                throw std::invalid_argument("key_update(T): aux must supply (c, y, d)");
            }
            const int a = in_bits[0].x, b = in_bits[0].z;
            const int c = aux[0], y = aux[1], d = aux[2];
            const int a2 = a ^ c;
            const int b2 = (a & (c ^ y ^ 1)) ^ b ^ d ^ y;
            return {{a2, b2}};
        }
        case GateKind::CNOT: {
            const auto [a, b] = in_bits[0];
            const auto [c, d] = in_bits[1];
            return {{a, b ^ d}, {a ^ c, d}};
        }
        case GateKind::CZ: {
            const auto [a, b] = in_bits[0];
            const auto [c, d] = in_bits[1];
            return {{a, b ^ c}, {c, a ^ d}};
        }
        case GateKind::TOFFOLI: {
            if (aux.size() < 4) {
                throw std::invalid_argument(
                    "key_update(TOFFOLI): aux must supply the re-encryption bits");
            }
            // The interactive protocol consumes four fresh re-encryption
            // bits, but their effect cancels; the output depends only on
            // the first wire's input pair.
            return {in_bits[0], {0, 0}, {0, 0}};
        }
    }
    throw std::logic_error("unknown gate");
}

namespace {

// Shared state of one blind gate execution. The simulation holds the full
// register; the server-side "batch" is the slot <-> wire mapping plus the
// transcript the server would record.
struct Engine {
    StateVector state;
    PauliKey frame; // tracked mask, indexed by register wire
    Prng& rng;
    const ProtocolOptions& opts;
    Transcript tr;
    std::vector<int> classical;
    TrapPlan plan;
    std::vector<TrapQubit> traps;
    int n_logical;
    int aux_wire = -1;

    Engine(const StateVector& reg, const PauliKey& key, Prng& r, const ProtocolOptions& o)
        : state(reg), frame(key), rng(r), opts(o), n_logical(reg.qubit_count()) {
        if (key.width() != reg.qubit_count()) {
            throw std::invalid_argument("key length does not match register width");
        }
    }

    int batch_count() const { return 3 + (aux_wire >= 0 ? 1 : 0); }

    int slot_to_wire(int slot) const {
        if (slot == 3) return aux_wire;
        return plan.slot_wire[slot];
    }

    void setup_traps(const GateJob& job) {
        plan = insert_traps(job, rng);
        traps = plan.traps;
        for (std::size_t j = 0; j < plan.trap_slots.size(); ++j) {
            StateVector t = trap_plaintext_state(traps[j].plaintext);
            PauliKey k;
            k.pairs = {traps[j].key};
            state = tensor(state, encrypt(t, k));
            frame.pairs.push_back(traps[j].key);
            plan.slot_wire[plan.trap_slots[j]] = state.qubit_count() - 1;
        }
    }

    // One pi/4 step, bracketed by the per-round hand-offs: the client
    // sends the batch, the server applies exactly one rotation, the batch
    // comes back.
    void round(const RotationInstruction& step) {
        tr.events.emplace_back(XferEvent{XferDirection::In, batch_count()});
        std::vector<int> wires(step.wires.size());
        for (std::size_t i = 0; i < step.wires.size(); ++i) {
            wires[i] = slot_to_wire(step.wires[i]);
        }
        state = apply_unitary(state, instruction_matrix(step), std::span<const int>(wires));
        RotEvent ev;
        ev.axis = step.axis;
        ev.control_arity = step.control_arity;
        ev.slots = step.wires;
        tr.events.emplace_back(std::move(ev));
        tr.events.emplace_back(XferEvent{XferDirection::Out, batch_count()});
    }

    void run_steps(std::span<const RotationInstruction> steps) {
        for (const RotationInstruction& s : steps) round(s);
    }

    void apply_trap_effects(const TrapGateStream& stream) {
        for (const TrapNetEffect& e : stream.effects) {
            if (e.z_flip_slot < 0) continue;
            for (std::size_t j = 0; j < plan.trap_slots.size(); ++j) {
                if (plan.trap_slots[j] == e.z_flip_slot) {
                    traps[j].key.z ^= 1;
                    frame.pairs[plan.slot_wire[e.z_flip_slot]].z ^= 1;
                }
            }
        }
    }

    // Client-side Pauli on one wire (state op plus frame bookkeeping).
    void client_mask(int wire, PauliKey::Pair p) {
        if (p.z) state = apply_unitary(state, gate_matrix(GateKind::Z), {wire});
        if (p.x) state = apply_unitary(state, gate_matrix(GateKind::X), {wire});
        frame.pairs[wire].x ^= p.x;
        frame.pairs[wire].z ^= p.z;
    }

    // Verifies each trap decrypts to its tracked dummy state, then
    // removes it. Highest wire first so indices stay stable.
    void teardown_traps() {
        std::vector<std::pair<int, TrapQubit>> by_wire;
        for (std::size_t j = 0; j < plan.trap_slots.size(); ++j) {
            by_wire.push_back({plan.slot_wire[plan.trap_slots[j]], traps[j]});
        }
        std::sort(by_wire.begin(), by_wire.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [wire, trap] : by_wire) {
            if (trap.key.z) state = apply_unitary(state, gate_matrix(GateKind::Z), {wire});
            if (trap.key.x) state = apply_unitary(state, gate_matrix(GateKind::X), {wire});
            int expected;
            if (trap_is_z_basis(trap.plaintext)) {
                expected = trap.plaintext == TrapPlaintext::One ? 1 : 0;
            } else {
                state = apply_unitary(state, gate_matrix(GateKind::H), {wire});
                expected = trap.plaintext == TrapPlaintext::Minus ? 1 : 0;
            }
            MeasurementOutcome m = measure_qubit(state, wire, rng);
            if (m.bit != expected) {
                throw std::logic_error("trap qubit verification failed");
            }
            state = discard_qubit(m.post_state, wire);
            frame.pairs.erase(frame.pairs.begin() + wire);
        }
    }

    BlindGateResult finish() {
        BlindGateResult res{std::move(state), std::move(frame), std::move(tr),
                            std::move(classical)};
        return res;
    }
};

void check_job(const GateJob& job, const StateVector& reg) {
    const int arity = gate_arity(job.gate);
    if (static_cast<int>(job.wires.size()) != arity) {
        throw std::invalid_argument("job wire count does not match gate arity");
    }
    for (int i = 0; i < arity; ++i) {
        if (job.wires[i] < 0 || job.wires[i] >= reg.qubit_count()) {
            throw std::out_of_range("job wire out of range");
        }
        for (int j = i + 1; j < arity; ++j) {
            if (job.wires[i] == job.wires[j]) {
                throw std::invalid_argument("job wires must be distinct");
            }
        }
    }
}

BlindGateResult run_clifford(const GateJob& job, const StateVector& reg, const PauliKey& key,
                             Prng& rng, const ProtocolOptions& opts) {
    Engine eng(reg, key, rng, opts);
    eng.setup_traps(job);

    const std::vector<RotationInstruction> actual =
        decompose(job.gate, std::span<const int>(eng.plan.logical_slots));
    const TrapGateStream stream =
        insert_trap_gates(actual, eng.plan, opts.trap_rounds, rng);
    eng.run_steps(stream.instructions);
    eng.apply_trap_effects(stream);

    std::vector<PauliKey::Pair> in_bits;
    for (int w : job.wires) in_bits.push_back(eng.frame.pairs[w]);
    const auto out_bits = key_update(job.gate, in_bits, {});
    for (std::size_t i = 0; i < job.wires.size(); ++i) {
        eng.frame.pairs[job.wires[i]] = out_bits[i];
    }

    eng.teardown_traps();
    return eng.finish();
}

BlindGateResult run_t_gate(const StateVector& reg, const PauliKey& key, int wire,
                           std::optional<int> forced_c, std::optional<int> forced_y,
                           std::optional<int> forced_d, Prng& rng,
                           const ProtocolOptions& opts) {
    GateJob job{GateKind::T, {wire}};
    check_job(job, reg);
    Engine eng(reg, key, rng, opts);
    eng.setup_traps(job);

    const int slot_d = eng.plan.logical_slots[0];
    const int a = eng.frame.pairs[wire].x;
    const int y = forced_y ? *forced_y : rng.bit();
    const int d = forced_d ? *forced_d : rng.bit();

    // T rotation on the encrypted qubit, then the gadget's CNOT from the
    // auxiliary; trap units are interleaved over this whole segment.
    std::vector<RotationInstruction> actual = decompose(GateKind::T, {slot_d});

    // Auxiliary qubit Z^d S^y |+>.
    const double phase = y * (std::numbers::pi / 2.0) + d * std::numbers::pi;
    StateVector aux(1, {Amp{1.0 / std::sqrt(2.0), 0.0},
                        std::polar(1.0 / std::sqrt(2.0), phase)});
    eng.state = tensor(eng.state, aux);
    eng.frame.pairs.push_back({0, 0});
    eng.aux_wire = eng.state.qubit_count() - 1;
    eng.tr.events.emplace_back(XferEvent{XferDirection::In, 1});

    for (const auto& ins : decompose(GateKind::CNOT, {3, slot_d})) actual.push_back(ins);
    const TrapGateStream stream =
        insert_trap_gates(actual, eng.plan, opts.trap_rounds, rng);
    eng.run_steps(stream.instructions);
    eng.apply_trap_effects(stream);

    // The server measures the encrypted qubit while holding the batch.
    const int data_wire = eng.plan.slot_wire[slot_d];
    eng.tr.events.emplace_back(XferEvent{XferDirection::In, eng.batch_count()});
    MeasurementOutcome m = forced_c
        ? MeasurementOutcome{*forced_c, StateVector(1)}
        : measure_qubit(eng.state, data_wire, rng);
    if (forced_c) {
        // Post-select the requested branch (test hook only).
        double p = marginal_probability(eng.state, std::span<const int>(&data_wire, 1),
                                        *forced_c ? "1" : "0");
        if (p < 1e-12) {
            throw std::invalid_argument("forced measurement branch has zero probability");
        }
        StateVector s = eng.state;
        auto& amps = StateVectorAccess::amps(s);
        const int n = s.qubit_count();
        const std::size_t mask = std::size_t{1} << (n - 1 - data_wire);
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const bool one = (i & mask) != 0;
            if (one == (*forced_c == 1)) {
                amps[i] *= scale;
            } else {
                amps[i] = 0.0;
            }
        }
        m.post_state = std::move(s);
    }
    eng.state = std::move(m.post_state);
    const int c = m.bit;
    eng.tr.events.emplace_back(XferEvent{XferDirection::Out, eng.batch_count()});

    // Classical correction bit; the conditional S on the auxiliary.
    const int x = a ^ y;
    eng.classical.push_back(c);
    eng.classical.push_back(x);
    if (x) {
        RotationInstruction s_rounds;
        s_rounds.axis = RotationAxis::Z;
        s_rounds.quarter_turns = 2;
        s_rounds.control_arity = 0;
        s_rounds.wires = {3};
        eng.run_steps(expand_steps(std::span<const RotationInstruction>(&s_rounds, 1)));
    }

    const std::array<int, 3> aux_bits{c, y, d};
    eng.frame.pairs[eng.aux_wire] =
        key_update(GateKind::T, std::span<const PauliKey::Pair>(&eng.frame.pairs[wire], 1),
                   aux_bits)[0];

    eng.teardown_traps();
    // Traps sat below the auxiliary; account for the shift.
    int aux_now = eng.aux_wire - static_cast<int>(eng.plan.trap_slots.size());
    eng.aux_wire = -1;

    // The measured wire is dropped and the auxiliary takes its place.
    eng.state = discard_qubit(eng.state, wire);
    eng.frame.pairs.erase(eng.frame.pairs.begin() + wire);
    --aux_now;
    eng.state = move_qubit(eng.state, aux_now, wire);
    PauliKey::Pair moved = eng.frame.pairs[aux_now];
    eng.frame.pairs.erase(eng.frame.pairs.begin() + aux_now);
    eng.frame.pairs.insert(eng.frame.pairs.begin() + wire, moved);

    return eng.finish();
}

} // namespace

BlindGateResult t_gate_protocol(const StateVector& reg, const PauliKey& key, int wire,
                                Prng& rng, const ProtocolOptions& opts) {
    return run_t_gate(reg, key, wire, std::nullopt, std::nullopt, std::nullopt, rng, opts);
}

BlindGateResult t_gate_protocol_forced(const StateVector& reg, const PauliKey& key, int wire,
                                       int forced_outcome, int y, int d, Prng& rng,
                                       const ProtocolOptions& opts) {
    return run_t_gate(reg, key, wire, forced_outcome, y, d, rng, opts);
}

BlindGateResult toffoli_protocol(const StateVector& reg, const PauliKey& key,
                                 std::span<const int> wires, Prng& rng,
                                 const ProtocolOptions& opts) {
    GateJob job{GateKind::TOFFOLI, {wires.begin(), wires.end()}};
    check_job(job, reg);
    Engine eng(reg, key, rng, opts);
    eng.setup_traps(job); // no traps for a triple-qubit gate, slots randomized

    const int w1 = wires[0], w2 = wires[1], w3 = wires[2];
    const int s1 = eng.plan.logical_slots[0];
    const int s2 = eng.plan.logical_slots[1];
    const int s3 = eng.plan.logical_slots[2];
    const int a = eng.frame.pairs[w1].x;
    const int b = eng.frame.pairs[w1].z;
    const int c = eng.frame.pairs[w2].x;
    const int f = eng.frame.pairs[w3].z;

    // Rounds realizing the Toffoli itself.
    const auto actual = decompose(GateKind::TOFFOLI, {s1, s2, s3});
    const TrapGateStream stream =
        insert_trap_gates(actual, eng.plan, opts.trap_rounds, rng);
    eng.run_steps(stream.instructions);

    // Pauli part of conjugating the mask through the Toffoli:
    //   Tof . X1^a Z1^b X2^c Z2^d X3^e Z3^f =
    //   X1^a Z1^{b^cf} X2^c Z2^{d^af} X3^{e^ac} Z3^f . CX23^a . CX13^c . CZ12^f . Tof
    // (the X3^{ac} term comes from CX23^a crossing X2^c).
    eng.frame.pairs[w1].z ^= c & f;
    eng.frame.pairs[w2].z ^= a & f;
    eng.frame.pairs[w3].x ^= a & c;

    // The leftover CZ/CNOT corrections are delegated back to the server,
    // each wrapped in a fresh client-side re-encryption so the rounds run
    // on re-masked qubits. Frame conjugation is linear over GF(2), so the
    // re-mask cancels exactly after the conjugated un-mask.
    auto correct = [&](GateKind g2, int u, int v, int su, int sv) {
        const PauliKey::Pair ru{rng.bit(), rng.bit()};
        const PauliKey::Pair rv{rng.bit(), rng.bit()};
        eng.client_mask(u, ru);
        eng.client_mask(v, rv);

        const auto steps = expand_steps(decompose(g2, {su, sv}));
        eng.run_steps(steps);
        const std::array<PauliKey::Pair, 2> in{eng.frame.pairs[u], eng.frame.pairs[v]};
        const auto out = key_update(g2, in, {});
        eng.frame.pairs[u] = out[0];
        eng.frame.pairs[v] = out[1];

        const std::array<PauliKey::Pair, 2> rr{ru, rv};
        const auto rconj = key_update(g2, rr, {});
        eng.client_mask(u, rconj[0]);
        eng.client_mask(v, rconj[1]);
    };

    eng.classical.push_back(f);
    eng.classical.push_back(c);
    eng.classical.push_back(a);
    if (f) correct(GateKind::CZ, w1, w2, s1, s2);
    if (c) correct(GateKind::CNOT, w1, w3, s1, s3);
    if (a) correct(GateKind::CNOT, w2, w3, s2, s3);

    // Final client-side fix-up: wires 2 and 3 are stripped bare and wire 1
    // keeps its input pair, giving dk = {(a,b), (0,0), (0,0)}.
    const std::array<PauliKey::Pair, 3> want{{{a, b}, {0, 0}, {0, 0}}};
    const std::array<int, 3> ws{w1, w2, w3};
    for (int i = 0; i < 3; ++i) {
        const PauliKey::Pair cur = eng.frame.pairs[ws[i]];
        eng.client_mask(ws[i], {cur.x ^ want[i].x, cur.z ^ want[i].z});
    }

    eng.teardown_traps();
    return eng.finish();
}

BlindGateResult execute_gate_blind(const GateJob& job, const StateVector& reg,
                                   const PauliKey& key, Prng& rng,
                                   const ProtocolOptions& opts) {
    check_job(job, reg);
    switch (job.gate) {
        case GateKind::T: return t_gate_protocol(reg, key, job.wires[0], rng, opts);
        case GateKind::TOFFOLI:
            return toffoli_protocol(reg, key, std::span<const int>(job.wires), rng, opts);
        default: return run_clifford(job, reg, key, rng, opts);
    }
}

} // namespace blindgrover
