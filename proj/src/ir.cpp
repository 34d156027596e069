#include "dcprop/ir.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace dcprop {

int gate_arity(GateOp op) {
  switch (op) {
    case GateOp::Cx:
    case GateOp::Cz:
    case GateOp::Swap:
      return 2;
    case GateOp::Ccx:
      return 3;
    default:
      return 1;
  }
}

int gate_param_count(GateOp op) {
  switch (op) {
    case GateOp::Rx:
    case GateOp::Ry:
    case GateOp::Rz:
      return 1;
    default:
      return 0;
  }
}

const char* gate_name(GateOp op) {
  switch (op) {
    case GateOp::X: return "x";
    case GateOp::Y: return "y";
    case GateOp::Z: return "z";
    case GateOp::H: return "h";
    case GateOp::S: return "s";
    case GateOp::Sdg: return "sdg";
    case GateOp::T: return "t";
    case GateOp::Tdg: return "tdg";
    case GateOp::Rx: return "rx";
    case GateOp::Ry: return "ry";
    case GateOp::Rz: return "rz";
    case GateOp::Cx: return "cx";
    case GateOp::Cz: return "cz";
    case GateOp::Swap: return "swap";
    case GateOp::Ccx: return "ccx";
  }
  return "?";
}

std::optional<GateOp> gate_from_name(const std::string& name) {
  static const std::map<std::string, GateOp> table = {
      {"x", GateOp::X},     {"y", GateOp::Y},     {"z", GateOp::Z},
      {"h", GateOp::H},     {"s", GateOp::S},     {"sdg", GateOp::Sdg},
      {"t", GateOp::T},     {"tdg", GateOp::Tdg}, {"rx", GateOp::Rx},
      {"ry", GateOp::Ry},   {"rz", GateOp::Rz},   {"cx", GateOp::Cx},
      {"cz", GateOp::Cz},   {"swap", GateOp::Swap}, {"ccx", GateOp::Ccx},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::Dynamic: return "dynamic";
    case Dialect::Probabilistic: return "probabilistic";
    case Dialect::Instance: return "instance";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

namespace cond {

namespace {
Condition make(ConditionNode node) {
  return std::make_shared<const ConditionNode>(std::move(node));
}
}  // namespace

Condition bit(int index) {
  return make({ConditionNode::Kind::AtomBit, index, nullptr, nullptr});
}

Condition prob(int index) {
  return make({ConditionNode::Kind::AtomProb, index, nullptr, nullptr});
}

Condition negate(Condition child) {
  return make({ConditionNode::Kind::Not, -1, std::move(child), nullptr});
}

Condition conjunction(Condition lhs, Condition rhs) {
  return make({ConditionNode::Kind::And, -1, std::move(lhs), std::move(rhs)});
}

Condition disjunction(Condition lhs, Condition rhs) {
  return make({ConditionNode::Kind::Or, -1, std::move(lhs), std::move(rhs)});
}

Condition exclusive(Condition lhs, Condition rhs) {
  return make({ConditionNode::Kind::Xor, -1, std::move(lhs), std::move(rhs)});
}

Condition constant(bool value) {
  return make({value ? ConditionNode::Kind::ConstTrue
                     : ConditionNode::Kind::ConstFalse,
               -1, nullptr, nullptr});
}

bool is_const_true(const Condition& c) {
  return c && c->kind == ConditionNode::Kind::ConstTrue;
}

bool is_const_false(const Condition& c) {
  return c && c->kind == ConditionNode::Kind::ConstFalse;
}

bool structurally_equal(const Condition& a, const Condition& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->index != b->index) return false;
  return structurally_equal(a->lhs, b->lhs) &&
         structurally_equal(a->rhs, b->rhs);
}

namespace {
template <typename Pred>
bool any_node(const Condition& c, Pred pred) {
  if (!c) return false;
  if (pred(*c)) return true;
  return any_node(c->lhs, pred) || any_node(c->rhs, pred);
}

void collect_atoms(const Condition& c, ConditionNode::Kind kind,
                   std::set<int>& out) {
  if (!c) return;
  if (c->kind == kind) out.insert(c->index);
  collect_atoms(c->lhs, kind, out);
  collect_atoms(c->rhs, kind, out);
}
}  // namespace

bool contains_bit_atom(const Condition& c) {
  return any_node(c, [](const ConditionNode& n) {
    return n.kind == ConditionNode::Kind::AtomBit;
  });
}

bool contains_prob_atom(const Condition& c) {
  return any_node(c, [](const ConditionNode& n) {
    return n.kind == ConditionNode::Kind::AtomProb;
  });
}

std::vector<int> bit_atoms(const Condition& c) {
  std::set<int> atoms;
  collect_atoms(c, ConditionNode::Kind::AtomBit, atoms);
  return {atoms.begin(), atoms.end()};
}

std::vector<int> prob_atoms(const Condition& c) {
  std::set<int> atoms;
  collect_atoms(c, ConditionNode::Kind::AtomProb, atoms);
  return {atoms.begin(), atoms.end()};
}

}  // namespace cond

bool IfElseInst::operator==(const IfElseInst& other) const {
  return cond::structurally_equal(condition, other.condition) &&
         then_branch == other.then_branch && else_branch == other.else_branch;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct Validator {
  const Circuit& circuit;
  std::vector<Violation> violations;
  std::set<int> bound_controls;

  void add(int index, std::string message) {
    violations.push_back({index, std::move(message)});
  }

  void check_qubit(int index, const QubitRef& q) {
    if (q.index < 0 || q.index >= circuit.num_qubits) {
      add(index, "qubit index " + std::to_string(q.index) + " out of range");
    }
  }

  void check_bit(int index, const BitRef& b) {
    if (b.index < 0 || b.index >= circuit.num_bits) {
      add(index, "bit index " + std::to_string(b.index) + " out of range");
    }
  }

  void check_distinct(int index, const std::vector<QubitRef>& operands) {
    std::set<int> seen;
    for (const auto& q : operands) {
      if (!seen.insert(q.index).second) {
        add(index, "duplicate operand q[" + std::to_string(q.index) + "]");
      }
    }
  }

  void check_unitary(int index, const UnitaryInst& u) {
    if (static_cast<int>(u.operands.size()) != gate_arity(u.gate.op)) {
      add(index, std::string("gate ") + gate_name(u.gate.op) +
                     " has wrong operand count");
    }
    if (static_cast<int>(u.gate.params.size()) !=
        gate_param_count(u.gate.op)) {
      add(index, std::string("gate ") + gate_name(u.gate.op) +
                     " has wrong parameter count");
    }
    for (double p : u.gate.params) {
      if (!std::isfinite(p)) add(index, "gate angle is not finite");
    }
    for (const auto& q : u.operands) check_qubit(index, q);
    check_distinct(index, u.operands);
  }

  void check_condition(int index, const Condition& c) {
    if (!c) {
      add(index, "missing guard");
      return;
    }
    switch (c->kind) {
      case ConditionNode::Kind::AtomBit:
        check_bit(index, BitRef{c->index});
        break;
      case ConditionNode::Kind::AtomProb:
        if (c->index < 0 || c->index >= circuit.num_bits) {
          add(index, "probabilistic control $" + std::to_string(c->index) +
                         " out of range");
        } else if (circuit.dialect == Dialect::Dynamic) {
          add(index, "probabilistic control in dynamic dialect");
        } else if (circuit.dialect == Dialect::Instance) {
          add(index, "probabilistic control in executable instance");
        } else if (!bound_controls.contains(c->index)) {
          add(index, "unbound probabilistic control $" +
                         std::to_string(c->index));
        }
        break;
      case ConditionNode::Kind::Not:
        check_condition(index, c->lhs);
        break;
      case ConditionNode::Kind::And:
      case ConditionNode::Kind::Or:
      case ConditionNode::Kind::Xor:
        check_condition(index, c->lhs);
        check_condition(index, c->rhs);
        break;
      case ConditionNode::Kind::ConstTrue:
      case ConditionNode::Kind::ConstFalse:
        break;
    }
  }

  void check_state(int index, const SparseState& state, int expected_qubits,
                   const char* what) {
    if (state.num_qubits() != expected_qubits) {
      add(index, std::string(what) + " has wrong qubit count");
      return;
    }
    if (std::abs(state.norm_squared() - 1.0) > kNormTol) {
      add(index, std::string(what) + " is not normalized");
    }
  }

  void check_branch_pair(int index, const std::vector<QubitRef>& operands,
                         const std::array<PGateBranch, 2>& branches) {
    if (operands.empty()) {
      add(index, "probabilistic gate needs at least one operand");
      return;
    }
    for (const auto& q : operands) check_qubit(index, q);
    check_distinct(index, operands);
    const double prob_sum = branches[0].prob + branches[1].prob;
    if (std::abs(prob_sum - 1.0) > kNormTol) {
      add(index, "branch probabilities do not sum to 1");
    }
    for (const auto& branch : branches) {
      if (branch.prob < 0.0 || branch.prob > 1.0) {
        add(index, "branch probability outside [0,1]");
      }
      check_state(index, branch.prep,
                  static_cast<int>(operands.size()) - 1, "branch preparation");
    }
  }

  void probabilistic_only(int index, const char* what) {
    if (circuit.dialect == Dialect::Dynamic) {
      add(index, std::string("probabilistic instruction (") + what +
                     ") in dynamic dialect");
    }
  }

  void run() {
    if (circuit.num_qubits < 1) add(-1, "circuit needs at least one qubit");
    if (circuit.num_bits < 0) add(-1, "negative classical register size");

    for (int i = 0; i < static_cast<int>(circuit.instructions.size()); ++i) {
      const Instruction& inst = circuit.instructions[i];
      std::visit(
          [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, UnitaryInst>) {
              check_unitary(i, op);
            } else if constexpr (std::is_same_v<T, MeasureInst>) {
              check_qubit(i, op.qubit);
              check_bit(i, op.bit);
            } else if constexpr (std::is_same_v<T, ResetInst>) {
              check_qubit(i, op.qubit);
            } else if constexpr (std::is_same_v<T, IfElseInst>) {
              check_condition(i, op.condition);
              for (const auto& u : op.then_branch) check_unitary(i, u);
              for (const auto& u : op.else_branch) check_unitary(i, u);
            } else if constexpr (std::is_same_v<T, RotationInst>) {
              probabilistic_only(i, "rotation");
              for (const auto& q : op.spec.qubits) check_qubit(i, q);
              check_distinct(i, op.spec.qubits);
              check_state(i, op.spec.state,
                          static_cast<int>(op.spec.qubits.size()),
                          "rotation state");
            } else if constexpr (std::is_same_v<T, PGateInst>) {
              probabilistic_only(i, "pgate");
              if (circuit.dialect == Dialect::Instance) {
                add(i, "pgate in executable instance");
              }
              check_branch_pair(i, op.operands, op.branches);
            } else if constexpr (std::is_same_v<T, PBindInst>) {
              probabilistic_only(i, "pbind");
              if (circuit.dialect == Dialect::Instance) {
                add(i, "pbind in executable instance");
              }
              check_branch_pair(i, op.operands, op.branches);
              if (op.control.index < 0 ||
                  op.control.index >= circuit.num_bits) {
                add(i, "control index out of range");
              } else {
                bound_controls.insert(op.control.index);
              }
            }
          },
          inst);
    }
  }
};

}  // namespace

std::vector<Violation> validate(const Circuit& circuit) {
  Validator v{circuit, {}, {}};
  v.run();
  return v.violations;
}

Circuit with_dialect(Circuit circuit, Dialect dialect) {
  circuit.dialect = dialect;
  auto violations = validate(circuit);
  if (!violations.empty()) {
    throw std::invalid_argument("circuit is not valid as " +
                                std::string(dialect_name(dialect)) + ": " +
                                violations.front().message);
  }
  return circuit;
}

// ---------------------------------------------------------------------------
// Surface guards
// ---------------------------------------------------------------------------

Condition normalize_condition(const SurfaceGuard& guard, int num_bits) {
  return std::visit(
      [&](const auto& g) -> Condition {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BitCompare>) {
          if (g.bit < 0 || g.bit >= num_bits) {
            throw std::out_of_range("bit index out of range");
          }
          Condition atom = cond::bit(g.bit);
          return g.value == 1 ? atom : cond::negate(atom);
        } else if constexpr (std::is_same_v<T, RegisterCompare>) {
          if (num_bits < 64 && g.value >= (std::uint64_t{1} << num_bits)) {
            throw std::out_of_range(
                "comparison value does not fit the classical register");
          }
          if (num_bits == 0) return cond::constant(true);
          Condition result;
          for (int i = 0; i < num_bits; ++i) {
            Condition atom = cond::bit(i);
            if (((g.value >> i) & 1u) == 0) atom = cond::negate(atom);
            result = result ? cond::conjunction(std::move(result),
                                                std::move(atom))
                            : std::move(atom);
          }
          return result;
        } else {
          static_assert(std::is_same_v<T, Predicate>);
          return g.expr;
        }
      },
      guard);
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

StatsRecord circuit_stats(const Circuit& circuit) {
  StatsRecord stats;
  stats.total_instructions = static_cast<int>(circuit.instructions.size());
  for (const Instruction& inst : circuit.instructions) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, UnitaryInst>) {
            ++stats.total_unitary;
          } else if constexpr (std::is_same_v<T, MeasureInst>) {
            ++stats.total_measure;
          } else if constexpr (std::is_same_v<T, ResetInst>) {
            ++stats.total_reset;
          } else if constexpr (std::is_same_v<T, IfElseInst>) {
            ++stats.total_if_else;
            if (!cond::contains_bit_atom(op.condition)) {
              ++stats.if_else_no_classical_atoms;
            }
          } else if constexpr (std::is_same_v<T, RotationInst>) {
            ++stats.total_rotation;
          } else if constexpr (std::is_same_v<T, PGateInst>) {
            ++stats.total_pgate;
          } else if constexpr (std::is_same_v<T, PBindInst>) {
            ++stats.total_pbind;
          }
        },
        inst);
  }
  return stats;
}

}  // namespace dcprop
