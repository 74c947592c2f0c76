#pragma once

#include "blindgrover/state_vector.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace blindgrover {

// The universal gate set the engine accepts.
enum class GateKind { X, Z, H, S, T, CNOT, CZ, TOFFOLI };

int gate_arity(GateKind g);
std::string_view gate_name(GateKind g);
// Throws std::invalid_argument for unknown names.
GateKind gate_from_name(std::string_view name);

// Small dense complex matrix, row-major, dimension a power of two.
class UnitaryMatrix {
  public:
    UnitaryMatrix(int dim, std::vector<Amp> entries);

    static UnitaryMatrix identity(int dim);

    int dim() const { return dim_; }
    Amp operator()(int r, int c) const { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    Amp& operator()(int r, int c) { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    std::span<const Amp> entries() const { return m_; }

    UnitaryMatrix adjoint() const;
    bool is_unitary(double tol = kAmpTolerance) const;

  private:
    int dim_;
    std::vector<Amp> m_;
};

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

enum class RotationAxis { Y, Z };
char axis_letter(RotationAxis a);

// One request for the server: apply R_axis(pi/4) (optionally singly or
// doubly controlled) `quarter_turns` times to the listed wires, controls
// first, target last. These six primitives -- Rz(pi/4), Ry(pi/4), and
// their C- / CC- variants -- are the only operations the server ever
// performs; everything else is built from them.
struct RotationInstruction {
    RotationAxis axis = RotationAxis::Z;
    int quarter_turns = 1; // mu >= 1, angle = mu * pi/4
    int control_arity = 0; // 0, 1 or 2
    std::vector<int> wires; // size control_arity + 1

    bool operator==(const RotationInstruction&) const = default;
};

// A gate's realization as rotation instructions, in application order.
// Replaying `sequence` equals gate_matrix(gate) up to the recorded global
// phase: gate = e^{i*global_phase} * replay(sequence). The phase is
// recorded for reference and ignored by every comparison in the library.
struct DecompositionEntry {
    GateKind gate;
    std::vector<RotationInstruction> sequence; // wires are 0..arity-1 templates
    double global_phase = 0.0;
};

// Textbook matrix of g. Multi-qubit control wires are the high-order
// index bits (wire 0 of the block).
UnitaryMatrix gate_matrix(GateKind g);

// Rz(theta) = diag(e^{-i theta/2}, e^{i theta/2});
// Ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
UnitaryMatrix rotation_matrix(RotationAxis axis, double angle);

// Block-diagonal controlled form of a 2x2 matrix: identity wherever any
// control is 0, u on the all-controls-1 block.
UnitaryMatrix controlled(const UnitaryMatrix& u, int arity);

// The decomposition table entry for g (template wires 0..arity-1).
const DecompositionEntry& decomposition(GateKind g);

// decomposition(g) with the template wires replaced by `wires`.
std::vector<RotationInstruction> decompose(GateKind g, std::span<const int> wires);
std::vector<RotationInstruction> decompose(GateKind g, std::initializer_list<int> wires);

// Dense matrix of a single instruction on its own wires (dim 2^(arity+1)).
UnitaryMatrix instruction_matrix(const RotationInstruction& ins);

// Product of an instruction sequence on `n_wires` wires, in application
// order (later instructions multiply from the left).
UnitaryMatrix replay_sequence(std::span<const RotationInstruction> seq, int n_wires);

// True iff the table entry for g replays to gate_matrix(g) up to global
// phase within 1e-9, checked entrywise (i.e. on the complete basis).
bool verify_decomposition(GateKind g);

// Same check against an explicit entry; used by the mutation hook.
bool verify_decomposition_entry(const DecompositionEntry& entry);

// `axis control_arity mu wires...`, one instruction per line.
std::string format_instruction(const RotationInstruction& ins);

// True iff a == b entrywise after aligning global phase.
bool equal_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b,
                              double tol = kAmpTolerance);

inline constexpr GateKind kAllGates[] = {GateKind::X,    GateKind::Z,  GateKind::H,
                                         GateKind::S,    GateKind::T,  GateKind::CNOT,
                                         GateKind::CZ,   GateKind::TOFFOLI};

} // namespace blindgrover
