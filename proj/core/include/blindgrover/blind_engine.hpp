#pragma once

#include "blindgrover/gates.hpp"
#include "blindgrover/pauli_otp.hpp"
#include "blindgrover/prng.hpp"
#include "blindgrover/state_vector.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blindgrover {

// One logical gate from the universal set, addressed into the client's
// register. Controls first, target last, matching RotationInstruction.
struct GateJob {
    GateKind gate;
    std::vector<int> wires;
};

// --- What the server observes ---------------------------------------------
//
// The server's view of a gate is a stream of single pi/4 rotation steps on
// batch-local slots plus qubit hand-offs. It contains no key bits, no trap
// positions, no gate names and no logical wire identities. Slots 0..2 are
// the standard 3-qubit batch; slot 3 appears only while a T-gadget
// auxiliary qubit is in flight.

struct RotEvent {
    RotationAxis axis;
    int control_arity;
    std::vector<int> slots; // batch-local, controls first
    bool operator==(const RotEvent&) const = default;
};

enum class XferDirection { In, Out }; // from the server's point of view

struct XferEvent {
    XferDirection direction;
    int count;
    bool operator==(const XferEvent&) const = default;
};

using TranscriptEvent = std::variant<RotEvent, XferEvent>;

struct Transcript {
    std::vector<TranscriptEvent> events;

    std::size_t size() const { return events.size(); }
    std::size_t rotation_count() const;
    void append(const Transcript& other);

    // Line-oriented serialization:
    //   ROT axis ctl_arity slot_list
    //   XFER in|out count
    std::string serialize() const;
};

Transcript parse_transcript(std::string_view text);

// --- Trap qubits -----------------------------------------------------------

// Dummy plaintexts traps are drawn from.
enum class TrapPlaintext { Zero, One, Plus, Minus };

StateVector trap_plaintext_state(TrapPlaintext p);
bool trap_is_z_basis(TrapPlaintext p);

struct TrapQubit {
    TrapPlaintext plaintext; // current expected plaintext (tracked)
    PauliKey::Pair key;      // its own fresh one-time-pad key
};

// Batch layout for one gate: which register wire sits in each of the 3
// slots, and which slots are traps. Slot assignment is uniform over the
// 3! arrangements, so the logical position is uniform over the valid
// layouts. Trap wires are appended to the register by the engine.
struct TrapPlan {
    std::vector<int> slot_wire;     // slot -> register wire (filled by engine for traps)
    std::vector<int> logical_slots; // slots carrying job wires, in job order
    std::vector<int> trap_slots;    // slots carrying traps
    std::vector<TrapQubit> traps;   // parallel to trap_slots
};

// Chooses the batch layout and fresh encrypted dummy states for a job:
// 2 traps for single-qubit gates, 1 for double, 0 for Toffoli.
TrapPlan insert_traps(const GateJob& job, Prng& rng);

// Net effect of one full-cycle trap unit, applied to the engine's
// bookkeeping after the rounds run. Every unit is a contiguous block of 8
// single steps whose product is a Pauli on trap wires tensor identity on
// everything else (often just a global phase), so blocks can be placed at
// any boundary of the actual stream without touching the computation.
struct TrapNetEffect {
    int z_flip_slot = -1; // slot whose tracked key gets z ^= 1; -1 for none
};

struct TrapGateStream {
    std::vector<RotationInstruction> instructions; // slot-indexed, actual + traps
    std::vector<TrapNetEffect> effects;
};

// Interleaves full-cycle trap units into `actual` (slot-indexed, in
// order). The actual steps keep their relative order; removing the trap
// units' net effect leaves the computation unchanged.
TrapGateStream insert_trap_gates(std::span<const RotationInstruction> actual,
                                 const TrapPlan& plan, int trap_rounds, Prng& rng);

// --- Key updates -----------------------------------------------------------

// Per-gate transformation of the one-time-pad bits that keeps the
// ciphertext consistent after the gate runs on encrypted data:
//   X, Z:   (a, b)        -> (a, b)
//   H:      (a, b)        -> (b, a)
//   S:      (a, b)        -> (a, a^b)
//   CNOT:   (a,b),(c,d)   -> (a, b^d), (a^c, d)     controls first
//   CZ:     (a,b),(c,d)   -> (a, b^c), (c, a^d)
//   T:      (a, b) with aux (c, y, d)
//           -> (a^c, a(c^y^1) ^ b ^ d ^ y)
//   TOFFOLI:(a,b),(c,d),(e,f) -> (a, b), (0, 0), (0, 0)
// aux carries (c, y, d) for T and the four fresh re-encryption bits for
// TOFFOLI (whose effect cancels by construction but which the interactive
// protocol consumes).
std::vector<PauliKey::Pair> key_update(GateKind g, std::span<const PauliKey::Pair> in_bits,
                                       std::span<const int> aux);

struct ProtocolOptions {
    int trap_rounds = 8; // per gate; multiples of 8 (full cycles)
};

struct BlindGateResult {
    StateVector state;
    PauliKey dk;
    Transcript transcript;
    // Classical bits the server observed while running the gate (the
    // T-gadget's measurement outcome c and correction bit x, the Toffoli
    // protocol's round-selection bits). Used by the blindness checks.
    std::vector<int> server_classical_bits;
};

// Runs one gate blindly: inserts traps, drives the server through
// single-rotation rounds (one pi/4 step per round trip), performs the
// client-side re-masking the T/Toffoli protocols need, updates the key on
// the touched wires and records the server's transcript. Decrypting
// result.state with result.dk equals applying the gate to the decrypted
// input, up to global phase.
BlindGateResult execute_gate_blind(const GateJob& job, const StateVector& reg,
                                   const PauliKey& key, Prng& rng,
                                   const ProtocolOptions& opts = {});

// The interactive T-gate protocol on one wire: auxiliary qubit Z^d S^y |+>,
// CNOT from the auxiliary, measurement of the encrypted qubit (outcome c),
// classical bit x = a ^ y controlling an S on the auxiliary, which then
// replaces the original wire.
BlindGateResult t_gate_protocol(const StateVector& reg, const PauliKey& key, int wire,
                                Prng& rng, const ProtocolOptions& opts = {});

// The triple-qubit protocol: CC-rotation rounds realizing the Toffoli,
// then conditional CZ/CNOT correction rounds (re-masked by the client
// around each one) and a final client-side Pauli fix-up, ending with
// dk = {(a,b), (0,0), (0,0)} on the three touched wires.
BlindGateResult toffoli_protocol(const StateVector& reg, const PauliKey& key,
                                 std::span<const int> wires, Prng& rng,
                                 const ProtocolOptions& opts = {});

// Test hook: same as t_gate_protocol but with the measurement outcome of
// the encrypted qubit forced, so both branches can be checked exhaustively.
BlindGateResult t_gate_protocol_forced(const StateVector& reg, const PauliKey& key,
                                       int wire, int forced_outcome, int y, int d,
                                       Prng& rng, const ProtocolOptions& opts = {});

} // namespace blindgrover
