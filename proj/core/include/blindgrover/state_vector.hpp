#pragma once

#include "blindgrover/prng.hpp"

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace blindgrover {

using Amp = std::complex<double>;

inline constexpr double kAmpTolerance = 1e-9;

// Dense state vector over n qubits (n kept small, ~12 and below).
//
// Wire convention used everywhere in this library: wire 0 is the MOST
// significant bit of the amplitude index, so a register reads left to
// right like the printed ket. basis index of |b0 b1 ... b_{n-1}> is
// sum_q b_q << (n-1-q). This is a choice; nothing downstream depends on
// it beyond these helpers.
class StateVector {
  public:
    // |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    StateVector(int n_qubits, std::vector<Amp> amps);

    int qubit_count() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const Amp> amplitudes() const { return amps_; }

    Amp amplitude(std::size_t index) const { return amps_[index]; }

    double norm_squared() const;

    // Fails (throws std::domain_error) if any amplitude is non-finite.
    void check_finite() const;

  private:
    int n_qubits_;
    std::vector<Amp> amps_;

    friend StateVector apply_unitary(const StateVector&, const class UnitaryMatrix&,
                                     std::span<const int>);
    friend struct StateVectorAccess;
};

// Mutable access for the implementation files; not part of the public
// surface clients should use.
struct StateVectorAccess {
    static std::vector<Amp>& amps(StateVector& s) { return s.amps_; }
};

struct MeasurementOutcome {
    int bit = 0;
    StateVector post_state;
};

// |bits> as a computational basis state; bits.size() must equal n.
// n == 0 is rejected ("empty register").
StateVector basis_state(int n, std::string_view bits);

// Uniform superposition over n qubits, all amplitudes 1/sqrt(2^n).
StateVector plus_state(int n);

// Applies u to the listed wires (wires[0] is the most significant bit of
// u's index space). u must be unitary, wires distinct and in range, and
// dim(u) == 2^wires.size().
StateVector apply_unitary(const StateVector& state, const class UnitaryMatrix& u,
                          std::span<const int> wires);
StateVector apply_unitary(const StateVector& state, const class UnitaryMatrix& u,
                          std::initializer_list<int> wires);

// Born-rule measurement of wire q in the computational basis.
MeasurementOutcome measure_qubit(const StateVector& state, int q, Prng& rng);

// Removes wire q. The wire must be in a product state with the rest
// (purity of its reduced density matrix >= 1 - 1e-9), which also covers
// freshly measured wires.
StateVector discard_qubit(const StateVector& state, int q);

// True iff |<a|b>| >= 1 - tol. Throws on dimension mismatch.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol = kAmpTolerance);

// <a|b>
Amp inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// a's wires become the high-order wires of the result.
StateVector tensor(const StateVector& a, const StateVector& b);

// 2x2 reduced density matrix of wire q, row-major {rho00, rho01, rho10, rho11}.
std::array<Amp, 4> reduced_density_matrix(const StateVector& state, int q);

// tr(rho_q^2); 1 for a wire unentangled with the rest.
double wire_purity(const StateVector& state, int q);

// Exchanges two wires (relabeling permutation).
StateVector swap_qubits(const StateVector& state, int a, int b);

// Moves wire `from` to position `to`, shifting the wires in between.
StateVector move_qubit(const StateVector& state, int from, int to);

// Probability that the listed wires read exactly `bits`.
double marginal_probability(const StateVector& state, std::span<const int> wires,
                            std::string_view bits);

} // namespace blindgrover
