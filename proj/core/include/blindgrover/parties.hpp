#pragma once

#include "blindgrover/grover.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blindgrover {

// The four protocol roles plus the eavesdropper.
enum class PartyId { Alice1, Alice2, Bob, Charlie, Eve };
std::string_view party_name(PartyId p);

enum class MessageKind {
    KeyRequest,      // n
    KeyReply,        // key bits delivered over BB84
    CiphertextUpload,
    SearchRequest,   // target bits
    QubitBatch,      // register transfer, possibly with decoys
    Instruction,     // rotation round request
    BatchReturn,
    DecoyAnnounce,   // positions + prepared states
    ClassicalBit,
    Result,          // dk + encrypted result
};

// Quantum payloads move by ownership; the channel asserts that a payload
// is held by exactly one party at any point of the log (no cloning of
// unknown states).
struct QuantumPayload {
    std::uint64_t id = 0;
    std::vector<StateVector> states;
};

struct Message {
    MessageKind kind;
    PartyId from;
    PartyId to;
    std::vector<int> bits;            // classical content
    std::string text;                 // classical content (targets, notes)
    std::optional<QuantumPayload> payload;
};

struct DecoyConfig {
    int m = 0; // decoy qubits per protected transfer
};

enum class EavesdropMode { None, InterceptResend };

struct EavesdropPolicy {
    EavesdropMode mode = EavesdropMode::None;
};

// Synchronous lossless channel, FIFO per directed edge. Keeps the full
// message log and the quantum-ownership ledger the no-cloning checks run
// against.
class Channel {
  public:
    std::uint64_t register_payload(PartyId owner);

    // Validates quantum ownership (payload owned by msg.from), transfers
    // it to msg.to and appends to the log.
    void send(Message msg);

    const std::vector<Message>& log() const { return log_; }
    bool ownership_violated() const { return ownership_violated_; }
    PartyId owner_of(std::uint64_t payload_id) const;

  private:
    std::vector<Message> log_;
    std::vector<std::pair<std::uint64_t, PartyId>> owners_;
    std::uint64_t next_id_ = 1;
    bool ownership_violated_ = false;
};

// --- BB84 key transport ------------------------------------------------------

struct Bb84Result {
    std::vector<int> delivered;    // receiver's bits surviving sifting and sampling
    std::vector<int> sender_kept;  // the sender's bits at the same positions
    bool aborted = false;
    int sifted_count = 0;
    int compared_count = 0;
    int error_count = 0;
    double error_rate = 0.0;
};

// Logical BB84 over a noiseless channel: the sender encodes each bit in a
// random Z/X basis, the receiver measures in a random basis, bases are
// compared publicly and mismatches discarded, and a sacrificed fraction
// of the sifted bits is compared for errors. Any error aborts. An
// intercept-resend eavesdropper on the channel measures every qubit in a
// uniformly random basis and forwards the collapsed state.
Bb84Result bb84_transport(std::span<const int> bits, const EavesdropPolicy& eve,
                          Prng& rng, double sacrifice_fraction = 0.5);

// --- Decoy protection --------------------------------------------------------

struct DecoyRecord {
    struct Entry {
        int position;            // wire index in the augmented batch
        TrapPlaintext state;     // prepared decoy state
    };
    std::vector<Entry> entries;  // sorted by position
};

// Inserts cfg.m decoy qubits, drawn uniformly from {|0>,|1>,|+>,|->}, at
// uniformly random positions among the payload qubits. The private record
// holds their positions and states for the later announcement.
std::pair<StateVector, DecoyRecord> add_decoys(const StateVector& payload,
                                               const DecoyConfig& cfg, Prng& rng);

struct DecoyCheckResult {
    bool pass = false;
    std::vector<int> outcomes_match;  // one flag per decoy
    StateVector payload{1};           // batch with decoy wires removed
};

// Measures each announced decoy in its preparation basis and compares
// with the announced state; the payload qubits are untouched and returned
// with the decoys stripped.
DecoyCheckResult check_decoys(const StateVector& batch, const DecoyRecord& announce,
                              Prng& rng);

// Intercept-resend attack on a register in flight: every wire measured in
// a uniformly random Z/X basis, collapsed state forwarded.
StateVector eve_intercept_resend(const StateVector& batch, Prng& rng);

// --- Full scenario -----------------------------------------------------------

struct ScenarioConfig {
    int n = 2;                 // data qubits
    std::string target;        // query bitstring, length n
    DecoyConfig decoys;
    EavesdropPolicy eve;       // applies to the decoy-protected hand-off
    std::uint64_t seed = 0;
    int max_resends = 3;
    ProtocolOptions protocol;
};

struct ScenarioReport {
    std::string result_bits;         // decrypted search result
    std::vector<int> decoy_checks;   // 1 = pass, per attempted hand-off
    bool detection_flag = false;     // true iff any decoy check failed
    bool completed = false;          // false when resends were exhausted
    int oracle_calls = 0;
    Transcript transcript;
    std::uint64_t seed = 0;
    PauliKey ek;
    PauliKey dk;
    bool ownership_ok = true;
    bool key_hygiene_ok = true;      // no key bits on server-facing edges
    std::vector<Message> message_log;

    // `RESULT bits=...`, `DETECTED true|false`, `ORACLE_CALLS k`, `SEED s`
    std::string serialize() const;
};

// Runs the whole searchable-encryption flow: key request, BB84 key
// delivery, encryption and upload, decoy-protected hand-off (resent on
// detection up to max_resends, then hard abort), blind Grover execution,
// result + dk delivery, decryption.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

double analytic_detection_rate(int m);

} // namespace blindgrover
