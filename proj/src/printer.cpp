#include <cstdio>
#include <sstream>

#include "dcprop/frontend.hpp"

namespace dcprop {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string format_complex(Complex z) {
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

int precedence(const ConditionNode& node) {
  switch (node.kind) {
    case ConditionNode::Kind::Or: return 0;
    case ConditionNode::Kind::Xor: return 1;
    case ConditionNode::Kind::And: return 2;
    case ConditionNode::Kind::Not: return 3;
    default: return 4;
  }
}

void print_cond(const Condition& c, std::string& out) {
  auto child = [&out](const Condition& node, int min_prec) {
    const bool parens = precedence(*node) < min_prec;
    if (parens) out += "(";
    print_cond(node, out);
    if (parens) out += ")";
  };
  switch (c->kind) {
    case ConditionNode::Kind::AtomBit:
      out += "c[" + std::to_string(c->index) + "]";
      break;
    case ConditionNode::Kind::AtomProb:
      out += "$" + std::to_string(c->index);
      break;
    case ConditionNode::Kind::ConstTrue:
      out += "true";
      break;
    case ConditionNode::Kind::ConstFalse:
      out += "false";
      break;
    case ConditionNode::Kind::Not:
      out += "!";
      child(c->lhs, 3);
      break;
    case ConditionNode::Kind::And:
      child(c->lhs, 2);
      out += " & ";
      child(c->rhs, 3);
      break;
    case ConditionNode::Kind::Xor:
      child(c->lhs, 1);
      out += " ^ ";
      child(c->rhs, 2);
      break;
    case ConditionNode::Kind::Or:
      child(c->lhs, 0);
      out += " | ";
      child(c->rhs, 1);
      break;
  }
}

std::string operand_text(const std::vector<QubitRef>& operands) {
  std::string out;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i > 0) out += ", ";
    out += "q[" + std::to_string(operands[i].index) + "]";
  }
  return out;
}

std::string unitary_text(const UnitaryInst& u) {
  std::string out = gate_name(u.gate.op);
  if (!u.gate.params.empty()) {
    out += "(" + format_double(u.gate.params[0]) + ")";
  }
  out += " " + operand_text(u.operands);
  return out;
}

std::string block_text(const std::vector<UnitaryInst>& body) {
  if (body.empty()) return "{ }";
  std::string out = "{ ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += "; ";
    out += unitary_text(body[i]);
  }
  out += " }";
  return out;
}

std::string branch_text(const PGateBranch& branch) {
  std::string out = "branch " + format_double(branch.prob);
  out += " lead=";
  out += branch.lead == PGateBranch::Lead::I ? "I" : "X";
  out += " prep=" + format_state(branch.prep);
  return out;
}

struct InstructionPrinter {
  std::string operator()(const UnitaryInst& u) const {
    return unitary_text(u);
  }
  std::string operator()(const MeasureInst& m) const {
    return "measure q[" + std::to_string(m.qubit.index) + "] -> c[" +
           std::to_string(m.bit.index) + "]";
  }
  std::string operator()(const ResetInst& r) const {
    return "reset q[" + std::to_string(r.qubit.index) + "]";
  }
  std::string operator()(const IfElseInst& inst) const {
    std::string out =
        "if (" + print_condition(inst.condition) + ") " +
        block_text(inst.then_branch);
    if (!inst.else_branch.empty()) {
      out += " else " + block_text(inst.else_branch);
    }
    return out;
  }
  std::string operator()(const RotationInst& r) const {
    std::string out = "rot " + operand_text(r.spec.qubits);
    out += r.spec.direction == RotationDirection::ToZero ? " from=" : " to=";
    out += format_state(r.spec.state);
    return out;
  }
  std::string operator()(const PGateInst& p) const {
    return "pgate " + operand_text(p.operands) + " : " +
           branch_text(p.branches[0]) + " " + branch_text(p.branches[1]);
  }
  std::string operator()(const PBindInst& p) const {
    return "pbind " + operand_text(p.operands) + " -> $" +
           std::to_string(p.control.index) + " : " +
           branch_text(p.branches[0]) + " " + branch_text(p.branches[1]);
  }
};

}  // namespace

std::string print_condition(const Condition& condition) {
  std::string out;
  print_cond(condition, out);
  return out;
}

std::string format_state(const SparseState& state) {
  std::string out = "{";
  bool first = true;
  for (const auto& [basis, amp] : state.amplitudes()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(basis) + ": " + format_complex(amp);
  }
  out += "}";
  return out;
}

std::string print_circuit(const Circuit& circuit) {
  std::string out;
  out += "qreg q[" + std::to_string(circuit.num_qubits) + "]\n";
  out += "creg c[" + std::to_string(circuit.num_bits) + "]\n";
  for (const Instruction& inst : circuit.instructions) {
    out += std::visit(InstructionPrinter{}, inst);
    out += "\n";
  }
  return out;
}

}  // namespace dcprop
