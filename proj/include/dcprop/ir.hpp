#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dcprop/sparse_state.hpp"

namespace dcprop {

/// Index of a qubit in the quantum register (0-based).
struct QubitRef {
  int index = 0;
  auto operator<=>(const QubitRef&) const = default;
};

/// Index of a bit in the classical register (0-based).
struct BitRef {
  int index = 0;
  auto operator<=>(const BitRef&) const = default;
};

enum class GateOp {
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  Rx,
  Ry,
  Rz,
  Cx,
  Cz,
  Swap,
  Ccx,
};

int gate_arity(GateOp op);
int gate_param_count(GateOp op);
const char* gate_name(GateOp op);
std::optional<GateOp> gate_from_name(const std::string& name);

/// A gate tag plus its angle parameters (one angle for Rx/Ry/Rz, none otherwise).
struct GateKind {
  GateOp op = GateOp::X;
  std::vector<double> params;

  bool operator==(const GateKind&) const = default;
};

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

/// Identifier of a probabilistic control; shares the index space of the
/// classical register (control i stands in for bit i).
struct ProbControlId {
  int index = 0;
  auto operator<=>(const ProbControlId&) const = default;
};

enum class ProbControlValue { P0, P1 };

struct ConditionNode;
using Condition = std::shared_ptr<const ConditionNode>;

/// Immutable boolean expression tree over classical bits and probabilistic
/// controls. Trees are shared; never mutate a node after construction.
struct ConditionNode {
  enum class Kind {
    AtomBit,
    AtomProb,
    Not,
    And,
    Or,
    Xor,
    ConstTrue,
    ConstFalse,
  };

  Kind kind;
  int index = -1;  // atom index for AtomBit / AtomProb
  Condition lhs;   // child for Not; left child for binary ops
  Condition rhs;   // right child for binary ops
};

namespace cond {
Condition bit(int index);
Condition prob(int index);
Condition negate(Condition child);
Condition conjunction(Condition lhs, Condition rhs);
Condition disjunction(Condition lhs, Condition rhs);
Condition exclusive(Condition lhs, Condition rhs);
Condition constant(bool value);

bool is_const_true(const Condition& c);
bool is_const_false(const Condition& c);
bool structurally_equal(const Condition& a, const Condition& b);
bool contains_bit_atom(const Condition& c);
bool contains_prob_atom(const Condition& c);
/// Collects the distinct atom indices appearing in the tree, ascending.
std::vector<int> bit_atoms(const Condition& c);
std::vector<int> prob_atoms(const Condition& c);
}  // namespace cond

// ---------------------------------------------------------------------------
// Instructions
// ---------------------------------------------------------------------------

enum class RotationDirection {
  ToZero,    // maps `state` to |0...0>
  FromZero,  // maps |0...0> to `state`
};

/// Exact specification of a rotation unitary by the state it maps to or from
/// the all-zero state. Any unitary realizing the mapping is a valid
/// implementation; the oracle uses a deterministic Householder completion.
struct RotationSpec {
  std::vector<QubitRef> qubits;
  RotationDirection direction = RotationDirection::ToZero;
  SparseState state;

  bool operator==(const RotationSpec&) const = default;
};

/// One alternative of a two-branch probabilistic gate: a single-qubit lead
/// operator on the first operand tensored with a state preparation on the
/// remaining operands.
struct PGateBranch {
  enum class Lead { I, X };
  Lead lead = Lead::I;
  SparseState prep;  // over the remaining operands, prepared from |0...0>
  double prob = 0.0;

  bool operator==(const PGateBranch&) const = default;
};

struct UnitaryInst {
  GateKind gate;
  std::vector<QubitRef> operands;

  bool operator==(const UnitaryInst&) const = default;
};

struct MeasureInst {
  QubitRef qubit;
  BitRef bit;

  bool operator==(const MeasureInst&) const = default;
};

struct ResetInst {
  QubitRef qubit;

  bool operator==(const ResetInst&) const = default;
};

/// Classically controlled operation. Branches hold unitaries only; the
/// else branch may be empty.
struct IfElseInst {
  Condition condition;
  std::vector<UnitaryInst> then_branch;
  std::vector<UnitaryInst> else_branch;

  bool operator==(const IfElseInst& other) const;
};

struct RotationInst {
  RotationSpec spec;

  bool operator==(const RotationInst&) const = default;
};

struct PGateInst {
  std::vector<QubitRef> operands;
  std::array<PGateBranch, 2> branches;

  bool operator==(const PGateInst&) const = default;
};

/// Probabilistic gate-control binding: sampling the gate fixes the value of
/// `control`. The first operand is the measured qubit.
struct PBindInst {
  std::vector<QubitRef> operands;
  std::array<PGateBranch, 2> branches;
  ProbControlId control;

  bool operator==(const PBindInst&) const = default;
};

using Instruction = std::variant<UnitaryInst, MeasureInst, ResetInst,
                                 IfElseInst, RotationInst, PGateInst,
                                 PBindInst>;

enum class Dialect {
  Dynamic,        // D: no probabilistic constructs
  Probabilistic,  // D': all instruction variants allowed
  Instance,       // D'': no PGate/PBind and no probabilistic atoms
};

const char* dialect_name(Dialect d);

struct Circuit {
  int num_qubits = 1;
  int num_bits = 0;
  Dialect dialect = Dialect::Dynamic;
  std::vector<Instruction> instructions;

  bool operator==(const Circuit&) const = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
  int instruction_index = -1;  // -1 for circuit-level problems
  std::string message;
};

/// Checks every IR invariant including the dialect constraint. Violations are
/// data, not failures; an empty result means the circuit is well formed.
std::vector<Violation> validate(const Circuit& circuit);

/// Re-tags the circuit's dialect after checking that the instructions satisfy
/// the target dialect's constraints. Throws std::invalid_argument otherwise.
Circuit with_dialect(Circuit circuit, Dialect dialect);

// ---------------------------------------------------------------------------
// Surface guards and condition normalization
// ---------------------------------------------------------------------------

/// Single-bit comparison `c[i] == value`.
struct BitCompare {
  int bit = 0;
  int value = 0;  // 0 or 1
};

/// Full-register comparison `c == value`.
struct RegisterCompare {
  std::uint64_t value = 0;
};

/// Boolean predicate over bits/controls, already an expression tree.
struct Predicate {
  Condition expr;
};

using SurfaceGuard = std::variant<BitCompare, RegisterCompare, Predicate>;

/// Translates a surface guard into normal form. Register comparisons expand
/// to a conjunction over all `num_bits` bits, folded left to right. Throws
/// std::out_of_range if a register comparison value needs more bits than the
/// register has.
Condition normalize_condition(const SurfaceGuard& guard, int num_bits);

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct StatsRecord {
  int total_instructions = 0;
  int total_unitary = 0;
  int total_if_else = 0;
  /// Classically controlled operations whose guard reads no classical bit
  /// (constant or over probabilistic controls only). On a probabilistic
  /// circuit this counts the guards needing no runtime feedforward.
  int if_else_no_classical_atoms = 0;
  int total_measure = 0;
  int total_reset = 0;
  int total_rotation = 0;
  int total_pgate = 0;
  int total_pbind = 0;

  bool operator==(const StatsRecord&) const = default;
};

StatsRecord circuit_stats(const Circuit& circuit);

}  // namespace dcprop
