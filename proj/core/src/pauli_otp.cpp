#include "blindgrover/pauli_otp.hpp"

#include "blindgrover/gates.hpp"

#include <stdexcept>

namespace blindgrover {

namespace {

void check_key_width(const StateVector& state, const PauliKey& key) {
    if (key.width() != state.qubit_count()) {
        throw std::invalid_argument("key length does not match register width");
    }
}

StateVector apply_pair(const StateVector& state, PauliKey::Pair pair, int wire) {
    StateVector out = state;
    // Z first, then X: the mask operator is X^x Z^z.
    if (pair.z) out = apply_unitary(out, gate_matrix(GateKind::Z), {wire});
    if (pair.x) out = apply_unitary(out, gate_matrix(GateKind::X), {wire});
    return out;
}

} // namespace

PauliKey keygen(int n, Prng& rng) {
    if (n < 1) throw std::invalid_argument("key must cover at least one qubit");
    PauliKey key;
    key.pairs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) key.pairs.push_back({rng.bit(), rng.bit()});
    return key;
}

StateVector encrypt(const StateVector& state, const PauliKey& key) {
    check_key_width(state, key);
    StateVector out = state;
    for (int i = 0; i < key.width(); ++i) out = apply_pair(out, key.pairs[i], i);
    return out;
}

StateVector decrypt(const StateVector& state, const PauliKey& key) {
    // X^x Z^z is involutive up to global phase.
    return encrypt(state, key);
}

StateVector partial_mask(const StateVector& state, const PauliKey& key,
                         std::span<const int> wires) {
    StateVector out = state;
    for (int w : wires) {
        if (w < 0 || w >= state.qubit_count() || w >= key.width()) {
            throw std::out_of_range("mask wire out of range");
        }
        out = apply_pair(out, key.pairs[w], w);
    }
    return out;
}

StateVector partial_mask(const StateVector& state, const PauliKey& key,
                         std::initializer_list<int> wires) {
    std::vector<int> v(wires);
    return partial_mask(state, key, std::span<const int>(v));
}

std::string key_to_hex(const PauliKey& key) {
    std::string out;
    int nibble = 0;
    int filled = 0;
    auto push_bit = [&](int b) {
        nibble = (nibble << 1) | b;
        if (++filled == 4) {
            out += "0123456789abcdef"[nibble];
            nibble = 0;
            filled = 0;
        }
    };
    for (const auto& p : key.pairs) {
        push_bit(p.x);
        push_bit(p.z);
    }
    if (filled != 0) {
        nibble <<= (4 - filled);
        out += "0123456789abcdef"[nibble];
    }
    return out;
}

PauliKey key_from_hex(std::string_view hex, int n_qubits) {
    const int need_bits = 2 * n_qubits;
    const int need_nibbles = (need_bits + 3) / 4;
    if (static_cast<int>(hex.size()) != need_nibbles) {
        throw std::invalid_argument("hex key has the wrong length");
    }
    std::vector<int> bits;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else throw std::invalid_argument("hex key must be lowercase hex");
        for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
    }
    PauliKey key;
    for (int i = 0; i < n_qubits; ++i) {
        key.pairs.push_back({bits[2 * i], bits[2 * i + 1]});
    }
    return key;
}

} // namespace blindgrover
