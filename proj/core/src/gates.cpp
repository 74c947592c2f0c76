#include "blindgrover/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace blindgrover {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4.0;

UnitaryMatrix make2(Amp a, Amp b, Amp c, Amp d) { return UnitaryMatrix(2, {a, b, c, d}); }

// Embeds an instruction's matrix into the full 2^n space of a small
// register (n <= 3 is all the replay checks need, but the code is general).
UnitaryMatrix embed(const UnitaryMatrix& m, std::span<const int> wires, int n) {
    const int dim = 1 << n;
    const int k = static_cast<int>(wires.size());
    UnitaryMatrix full(dim, std::vector<Amp>(static_cast<std::size_t>(dim) * dim));
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            // rows/cols must agree on all wires outside the instruction
            bool outside_equal = true;
            for (int q = 0; q < n && outside_equal; ++q) {
                bool involved = false;
                for (int w : wires) involved |= (w == q);
                if (!involved) {
                    outside_equal = ((r >> (n - 1 - q)) & 1) == ((c >> (n - 1 - q)) & 1);
                }
            }
            if (!outside_equal) continue;
            int mr = 0, mc = 0;
            for (int b = 0; b < k; ++b) {
                mr = (mr << 1) | ((r >> (n - 1 - wires[b])) & 1);
                mc = (mc << 1) | ((c >> (n - 1 - wires[b])) & 1);
            }
            full(r, c) = m(mr, mc);
        }
    }
    return full;
}

} // namespace

int gate_arity(GateKind g) {
    switch (g) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::T: return 1;
        case GateKind::CNOT:
        case GateKind::CZ: return 2;
        case GateKind::TOFFOLI: return 3;
    }
    throw std::logic_error("unknown gate");
}

std::string_view gate_name(GateKind g) {
    switch (g) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::TOFFOLI: return "TOFFOLI";
    }
    throw std::logic_error("unknown gate");
}

GateKind gate_from_name(std::string_view name) {
    for (GateKind g : kAllGates) {
        if (gate_name(g) == name) return g;
    }
    throw std::invalid_argument("unknown gate name: " + std::string(name));
}

UnitaryMatrix::UnitaryMatrix(int dim, std::vector<Amp> entries)
    : dim_(dim), m_(std::move(entries)) {
    if (dim <= 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("matrix dimension must be a power of two");
    }
    if (m_.size() != static_cast<std::size_t>(dim) * dim) {
        throw std::invalid_argument("entry count must be dim^2");
    }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
    UnitaryMatrix u(dim, std::vector<Amp>(static_cast<std::size_t>(dim) * dim));
    for (int i = 0; i < dim; ++i) u(i, i) = 1.0;
    return u;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    UnitaryMatrix out(dim_, std::vector<Amp>(m_.size()));
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

bool UnitaryMatrix::is_unitary(double tol) const {
    const UnitaryMatrix prod = *this * adjoint();
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            const Amp want = r == c ? Amp{1.0, 0.0} : Amp{0.0, 0.0};
            if (std::abs(prod(r, c) - want) > tol) return false;
        }
    }
    return true;
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const int d = a.dim();
    UnitaryMatrix out(d, std::vector<Amp>(static_cast<std::size_t>(d) * d));
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const Amp ark = a(r, k);
            if (ark == Amp{0.0, 0.0}) continue;
            for (int c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

char axis_letter(RotationAxis a) { return a == RotationAxis::Y ? 'y' : 'z'; }

UnitaryMatrix gate_matrix(GateKind g) {
    const Amp i{0.0, 1.0};
    switch (g) {
        case GateKind::X: return make2(0, 1, 1, 0);
        case GateKind::Z: return make2(1, 0, 0, -1);
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return make2(s, s, s, -s);
        }
        case GateKind::S: return make2(1, 0, 0, i);
        case GateKind::T: return make2(1, 0, 0, std::polar(1.0, kQuarter));
        case GateKind::CNOT: return controlled(gate_matrix(GateKind::X), 1);
        case GateKind::CZ: return controlled(gate_matrix(GateKind::Z), 1);
        case GateKind::TOFFOLI: return controlled(gate_matrix(GateKind::X), 2);
    }
    throw std::logic_error("unknown gate");
}

UnitaryMatrix rotation_matrix(RotationAxis axis, double angle) {
    const double h = angle / 2.0;
    if (axis == RotationAxis::Z) {
        return make2(std::polar(1.0, -h), 0, 0, std::polar(1.0, h));
    }
    return make2(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
}

UnitaryMatrix controlled(const UnitaryMatrix& u, int arity) {
    if (u.dim() != 2) throw std::invalid_argument("controlled() takes a 2x2 matrix");
    if (arity != 1 && arity != 2) throw std::invalid_argument("control arity must be 1 or 2");
    const int dim = 1 << (arity + 1);
    UnitaryMatrix out = UnitaryMatrix::identity(dim);
    out(dim - 2, dim - 2) = u(0, 0);
    out(dim - 2, dim - 1) = u(0, 1);
    out(dim - 1, dim - 2) = u(1, 0);
    out(dim - 1, dim - 1) = u(1, 1);
    return out;
}

namespace {

RotationInstruction rot(RotationAxis axis, int mu, std::vector<int> wires) {
    RotationInstruction ins;
    ins.axis = axis;
    ins.quarter_turns = mu;
    ins.control_arity = static_cast<int>(wires.size()) - 1;
    ins.wires = std::move(wires);
    return ins;
}

// The rotation realizations behind each gate, sequences in application
// order. The controlled identities need explicit Rz(pi/2) rounds on the
// control: C-Rz(pi) differs from CZ by an S on the control wire (a
// relative phase between the control blocks, not a global one), and
// likewise C-Ry(pi)C-Rz(pi) differs from CNOT, CC-Ry(pi)CC-Rz(pi) from
// the Toffoli by a controlled-S on the two control wires.
//   X   = e^{i pi/2} Ry(pi) Rz(pi)
//   Z   = e^{i pi/2} Rz(pi)
//   H   = e^{i pi/2} Ry(pi/2) Rz(pi)
//   S   = e^{i pi/4} Rz(pi/2)
//   T   = e^{i pi/8} Rz(pi/4)
//   CZ      = e^{i pi/4} [Rz(pi/2) on ctl] . C-Rz(pi)
//   CNOT    = e^{i pi/4} [Rz(pi/2) on ctl] . C-Ry(pi) . C-Rz(pi)
//   TOFFOLI = e^{i pi/8} [Rz(pi/4) on ctl1] . C-Rz(pi/2) on ctls . CC-Ry(pi) . CC-Rz(pi)
std::vector<DecompositionEntry> build_table() {
    using RA = RotationAxis;
    std::vector<DecompositionEntry> t;
    t.push_back({GateKind::X, {rot(RA::Z, 4, {0}), rot(RA::Y, 4, {0})}, kPi / 2});
    t.push_back({GateKind::Z, {rot(RA::Z, 4, {0})}, kPi / 2});
    t.push_back({GateKind::H, {rot(RA::Z, 4, {0}), rot(RA::Y, 2, {0})}, kPi / 2});
    t.push_back({GateKind::S, {rot(RA::Z, 2, {0})}, kPi / 4});
    t.push_back({GateKind::T, {rot(RA::Z, 1, {0})}, kPi / 8});
    t.push_back({GateKind::CNOT,
                 {rot(RA::Z, 4, {0, 1}), rot(RA::Y, 4, {0, 1}), rot(RA::Z, 2, {0})},
                 kPi / 4});
    t.push_back({GateKind::CZ, {rot(RA::Z, 4, {0, 1}), rot(RA::Z, 2, {0})}, kPi / 4});
    t.push_back({GateKind::TOFFOLI,
                 {rot(RA::Z, 4, {0, 1, 2}), rot(RA::Y, 4, {0, 1, 2}),
                  rot(RA::Z, 2, {0, 1}), rot(RA::Z, 1, {0})},
                 kPi / 8});
    return t;
}

const std::vector<DecompositionEntry>& table() {
    static const std::vector<DecompositionEntry> t = build_table();
    return t;
}

} // namespace

const DecompositionEntry& decomposition(GateKind g) {
    for (const auto& e : table()) {
        if (e.gate == g) return e;
    }
    throw std::logic_error("unknown gate");
}

std::vector<RotationInstruction> decompose(GateKind g, std::span<const int> wires) {
    if (static_cast<int>(wires.size()) != gate_arity(g)) {
        throw std::invalid_argument("wire count does not match gate arity");
    }
    std::vector<RotationInstruction> out;
    for (const RotationInstruction& tpl : decomposition(g).sequence) {
        RotationInstruction ins = tpl;
        for (int& w : ins.wires) w = wires[w];
        out.push_back(std::move(ins));
    }
    return out;
}

std::vector<RotationInstruction> decompose(GateKind g, std::initializer_list<int> wires) {
    std::vector<int> v(wires);
    return decompose(g, std::span<const int>(v));
}

UnitaryMatrix instruction_matrix(const RotationInstruction& ins) {
    const UnitaryMatrix r =
        rotation_matrix(ins.axis, ins.quarter_turns * kQuarter);
    return ins.control_arity == 0 ? r : controlled(r, ins.control_arity);
}

UnitaryMatrix replay_sequence(std::span<const RotationInstruction> seq, int n_wires) {
    UnitaryMatrix full = UnitaryMatrix::identity(1 << n_wires);
    for (const RotationInstruction& ins : seq) {
        full = embed(instruction_matrix(ins), ins.wires, n_wires) * full;
    }
    return full;
}

bool equal_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    // Align on the largest entry of a, then compare everywhere.
    int br = 0, bc = 0;
    double best = -1.0;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) {
            if (std::abs(a(r, c)) > best) {
                best = std::abs(a(r, c));
                br = r;
                bc = c;
            }
        }
    }
    if (std::abs(b(br, bc)) < tol) return false;
    const Amp phase = a(br, bc) / b(br, bc);
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) {
            if (std::abs(a(r, c) - phase * b(r, c)) > tol) return false;
        }
    }
    return true;
}

bool verify_decomposition_entry(const DecompositionEntry& entry) {
    const int arity = gate_arity(entry.gate);
    for (const RotationInstruction& ins : entry.sequence) {
        if (ins.quarter_turns < 1) return false;
        if (ins.control_arity < 0 || ins.control_arity > 2) return false;
        if (static_cast<int>(ins.wires.size()) != ins.control_arity + 1) return false;
    }
    const UnitaryMatrix replay = replay_sequence(entry.sequence, arity);
    return equal_up_to_global_phase(gate_matrix(entry.gate), replay);
}

bool verify_decomposition(GateKind g) { return verify_decomposition_entry(decomposition(g)); }

std::string format_instruction(const RotationInstruction& ins) {
    std::ostringstream os;
    os << axis_letter(ins.axis) << ' ' << ins.control_arity << ' ' << ins.quarter_turns;
    for (int w : ins.wires) os << ' ' << w;
    return os.str();
}

} // namespace blindgrover
