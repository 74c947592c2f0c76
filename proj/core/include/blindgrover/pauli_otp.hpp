#pragma once

#include "blindgrover/prng.hpp"
#include "blindgrover/state_vector.hpp"

#include <string>
#include <vector>

namespace blindgrover {

// Quantum one-time pad key: one (x, z) bit pair per qubit. The same type
// serves as encryption key, decryption key and every intermediate key the
// protocol tracks.
struct PauliKey {
    struct Pair {
        int x = 0;
        int z = 0;
        bool operator==(const Pair&) const = default;
    };
    std::vector<Pair> pairs;

    int width() const { return static_cast<int>(pairs.size()); }
    bool operator==(const PauliKey&) const = default;
};

// 2n independent uniform bits grouped into n (x, z) pairs.
PauliKey keygen(int n, Prng& rng);

// Applies Z^z then X^x on each wire i, i.e. the mask operator X^x Z^z.
// The order is fixed so transcripts are deterministic; either order
// decrypts correctly up to global phase.
StateVector encrypt(const StateVector& state, const PauliKey& key);

// Inverse of encrypt up to global phase (Pauli masks are involutive).
StateVector decrypt(const StateVector& state, const PauliKey& key);

// Applies the mask only on the listed wires; key is indexed by wire.
StateVector partial_mask(const StateVector& state, const PauliKey& key,
                         std::span<const int> wires);
StateVector partial_mask(const StateVector& state, const PauliKey& key,
                         std::initializer_list<int> wires);

// Lowercase hex of the bit sequence x1 z1 x2 z2 ..., zero-padded on the
// right to a whole number of nibbles.
std::string key_to_hex(const PauliKey& key);
PauliKey key_from_hex(std::string_view hex, int n_qubits);

} // namespace blindgrover
