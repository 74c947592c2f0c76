#include "blindgrover/state_vector.hpp"

#include "blindgrover/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blindgrover {

namespace {

std::size_t dim_for(int n) { return std::size_t{1} << n; }

void check_wire(const StateVector& s, int q) {
    if (q < 0 || q >= s.qubit_count()) {
        throw std::out_of_range("qubit index out of range");
    }
}

// Bit of wire q inside amplitude index i (wire 0 = most significant).
int wire_bit(std::size_t i, int q, int n) { return static_cast<int>((i >> (n - 1 - q)) & 1u); }

std::size_t wire_mask(int q, int n) { return std::size_t{1} << (n - 1 - q); }

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits), amps_(dim_for(n_qubits)) {
    if (n_qubits <= 0) throw std::invalid_argument("empty register");
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amp> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits <= 0) throw std::invalid_argument("empty register");
    if (amps_.size() != dim_for(n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
    check_finite();
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Amp& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::check_finite() const {
    for (const Amp& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::domain_error("non-finite amplitude");
        }
    }
}

StateVector basis_state(int n, std::string_view bits) {
    if (n <= 0) throw std::invalid_argument("empty register");
    if (static_cast<int>(bits.size()) != n) {
        throw std::invalid_argument("bit string length must equal qubit count");
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    std::vector<Amp> amps(dim_for(n));
    amps[index] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector plus_state(int n) {
    if (n < 1) throw std::invalid_argument("empty register");
    const double a = 1.0 / std::sqrt(static_cast<double>(dim_for(n)));
    return StateVector(n, std::vector<Amp>(dim_for(n), Amp{a, 0.0}));
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> wires) {
    const int n = state.qubit_count();
    const int w = static_cast<int>(wires.size());
    if (u.dim() != (1 << w)) throw std::invalid_argument("matrix dimension mismatch");
    if (!u.is_unitary()) throw std::invalid_argument("matrix is not unitary");
    for (int i = 0; i < w; ++i) {
        check_wire(state, wires[i]);
        for (int j = i + 1; j < w; ++j) {
            if (wires[i] == wires[j]) throw std::invalid_argument("wire collision");
        }
    }

    std::vector<std::size_t> masks(w);
    for (int i = 0; i < w; ++i) masks[i] = wire_mask(wires[i], n);

    StateVector out = state;
    auto& amps = StateVectorAccess::amps(out);
    const auto& in = state.amplitudes();
    const std::size_t dim = in.size();
    const int block = 1 << w;

    std::size_t all_mask = 0;
    for (auto m : masks) all_mask |= m;

    std::vector<Amp> gathered(block);
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & all_mask) != 0) continue; // enumerate each block once
        for (int r = 0; r < block; ++r) {
            std::size_t idx = base;
            for (int b = 0; b < w; ++b) {
                if ((r >> (w - 1 - b)) & 1) idx |= masks[b];
            }
            gathered[r] = in[idx];
        }
        for (int r = 0; r < block; ++r) {
            Amp acc{0.0, 0.0};
            for (int c = 0; c < block; ++c) acc += u(r, c) * gathered[c];
            std::size_t idx = base;
            for (int b = 0; b < w; ++b) {
                if ((r >> (w - 1 - b)) & 1) idx |= masks[b];
            }
            amps[idx] = acc;
        }
    }
    out.check_finite();
    return out;
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::initializer_list<int> wires) {
    std::vector<int> v(wires);
    return apply_unitary(state, u, std::span<const int>(v));
}

MeasurementOutcome measure_qubit(const StateVector& state, int q, Prng& rng) {
    check_wire(state, q);
    const int n = state.qubit_count();
    const auto& in = state.amplitudes();

    double p1 = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (wire_bit(i, q, n)) p1 += std::norm(in[i]);
    }
    p1 = std::clamp(p1, 0.0, 1.0);

    // bit = 1 iff u < p1, so a probability-0 branch is never sampled.
    const int bit = rng.real01() < p1 ? 1 : 0;
    const double p = bit ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(p);

    StateVector post = state;
    auto& amps = StateVectorAccess::amps(post);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (wire_bit(i, q, n) == bit) {
            amps[i] *= scale;
        } else {
            amps[i] = 0.0;
        }
    }
    return MeasurementOutcome{bit, std::move(post)};
}

std::array<Amp, 4> reduced_density_matrix(const StateVector& state, int q) {
    check_wire(state, q);
    const int n = state.qubit_count();
    const auto& amps = state.amplitudes();
    const std::size_t mask = wire_mask(q, n);

    std::array<Amp, 4> rho{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) continue;
        const Amp a0 = amps[i];
        const Amp a1 = amps[i | mask];
        rho[0] += a0 * std::conj(a0);
        rho[1] += a0 * std::conj(a1);
        rho[2] += a1 * std::conj(a0);
        rho[3] += a1 * std::conj(a1);
    }
    return rho;
}

double wire_purity(const StateVector& state, int q) {
    const auto rho = reduced_density_matrix(state, q);
    double purity = 0.0;
    for (const Amp& e : rho) purity += std::norm(e);
    return purity;
}

StateVector discard_qubit(const StateVector& state, int q) {
    check_wire(state, q);
    const int n = state.qubit_count();
    if (n == 1) throw std::invalid_argument("cannot discard the last qubit");
    if (wire_purity(state, q) < 1.0 - kAmpTolerance) {
        throw std::invalid_argument("cannot discard entangled qubit");
    }

    // Principal eigenvector of the 2x2 reduced density matrix is the
    // wire's pure state; project onto it.
    const auto rho = reduced_density_matrix(state, q);
    const double p = rho[0].real();
    const double r = rho[3].real();
    const Amp c = rho[1];
    const double lambda = 0.5 * (p + r) + std::sqrt(0.25 * (p - r) * (p - r) + std::norm(c));
    Amp chi0, chi1;
    if (std::abs(c) > 1e-12) {
        chi0 = c;
        chi1 = Amp{lambda - p, 0.0};
    } else {
        chi0 = p >= r ? Amp{1.0, 0.0} : Amp{0.0, 0.0};
        chi1 = p >= r ? Amp{0.0, 0.0} : Amp{1.0, 0.0};
    }
    const double norm = std::sqrt(std::norm(chi0) + std::norm(chi1));
    chi0 /= norm;
    chi1 /= norm;

    const auto& amps = state.amplitudes();
    const std::size_t mask = wire_mask(q, n);
    const std::size_t low = mask - 1;              // bits below the wire
    std::vector<Amp> rest(dim_for(n - 1));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) continue;
        const std::size_t j = ((i & ~((mask << 1) - 1)) >> 1) | (i & low);
        rest[j] = std::conj(chi0) * amps[i] + std::conj(chi1) * amps[i | mask];
    }
    double rn = 0.0;
    for (const Amp& a : rest) rn += std::norm(a);
    const double scale = 1.0 / std::sqrt(rn);
    for (Amp& a : rest) a *= scale;
    return StateVector(n - 1, std::move(rest));
}

Amp inner_product(const StateVector& a, const StateVector& b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw std::invalid_argument("dimension mismatch");
    }
    Amp acc{0.0, 0.0};
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) acc += std::conj(av[i]) * bv[i];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const int n = a.qubit_count() + b.qubit_count();
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    std::vector<Amp> amps(dim_for(n));
    for (std::size_t i = 0; i < av.size(); ++i) {
        for (std::size_t j = 0; j < bv.size(); ++j) {
            amps[i * bv.size() + j] = av[i] * bv[j];
        }
    }
    return StateVector(n, std::move(amps));
}

StateVector swap_qubits(const StateVector& state, int a, int b) {
    check_wire(state, a);
    check_wire(state, b);
    if (a == b) return state;
    const int n = state.qubit_count();
    const std::size_t ma = wire_mask(a, n);
    const std::size_t mb = wire_mask(b, n);
    StateVector out = state;
    auto& amps = StateVectorAccess::amps(out);
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const int ba = (i & ma) != 0;
        const int bb = (i & mb) != 0;
        if (ba == bb) continue;
        std::size_t j = (i ^ ma) ^ mb;
        if (i < j) std::swap(amps[i], amps[j]);
    }
    return out;
}

StateVector move_qubit(const StateVector& state, int from, int to) {
    StateVector out = state;
    int pos = from;
    while (pos < to) {
        out = swap_qubits(out, pos, pos + 1);
        ++pos;
    }
    while (pos > to) {
        out = swap_qubits(out, pos, pos - 1);
        --pos;
    }
    return out;
}

double marginal_probability(const StateVector& state, std::span<const int> wires,
                            std::string_view bits) {
    if (wires.size() != bits.size()) throw std::invalid_argument("wire/bit count mismatch");
    const int n = state.qubit_count();
    std::size_t mask = 0;
    std::size_t want = 0;
    for (std::size_t k = 0; k < wires.size(); ++k) {
        check_wire(state, wires[k]);
        const std::size_t m = wire_mask(wires[k], n);
        mask |= m;
        if (bits[k] == '1') want |= m;
    }
    double p = 0.0;
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == want) p += std::norm(amps[i]);
    }
    return p;
}

} // namespace blindgrover
