#include "dcprop/simplify.hpp"

#include <functional>
#include <stdexcept>

namespace dcprop {

namespace {

using AtomRule = std::function<Condition(const ConditionNode&)>;

// Shared folding core. The atom rule decides what bit/control atoms become;
// everything else is short-circuit identities and constant folding.
Condition fold(const Condition& c, const AtomRule& atom_rule) {
  switch (c->kind) {
    case ConditionNode::Kind::AtomBit:
    case ConditionNode::Kind::AtomProb:
      return atom_rule(*c);
    case ConditionNode::Kind::ConstTrue:
    case ConditionNode::Kind::ConstFalse:
      return c;
    case ConditionNode::Kind::Not: {
      Condition child = fold(c->lhs, atom_rule);
      if (cond::is_const_true(child)) return cond::constant(false);
      if (cond::is_const_false(child)) return cond::constant(true);
      if (child == c->lhs) return c;
      return cond::negate(std::move(child));
    }
    case ConditionNode::Kind::And: {
      Condition lhs = fold(c->lhs, atom_rule);
      Condition rhs = fold(c->rhs, atom_rule);
      if (cond::is_const_false(lhs) || cond::is_const_false(rhs)) {
        return cond::constant(false);
      }
      if (cond::is_const_true(lhs)) return rhs;
      if (cond::is_const_true(rhs)) return lhs;
      if (lhs == c->lhs && rhs == c->rhs) return c;
      return cond::conjunction(std::move(lhs), std::move(rhs));
    }
    case ConditionNode::Kind::Or: {
      Condition lhs = fold(c->lhs, atom_rule);
      Condition rhs = fold(c->rhs, atom_rule);
      if (cond::is_const_true(lhs) || cond::is_const_true(rhs)) {
        return cond::constant(true);
      }
      if (cond::is_const_false(lhs)) return rhs;
      if (cond::is_const_false(rhs)) return lhs;
      if (lhs == c->lhs && rhs == c->rhs) return c;
      return cond::disjunction(std::move(lhs), std::move(rhs));
    }
    case ConditionNode::Kind::Xor: {
      Condition lhs = fold(c->lhs, atom_rule);
      Condition rhs = fold(c->rhs, atom_rule);
      const bool lhs_const =
          cond::is_const_true(lhs) || cond::is_const_false(lhs);
      const bool rhs_const =
          cond::is_const_true(rhs) || cond::is_const_false(rhs);
      if (lhs_const && rhs_const) {
        return cond::constant(cond::is_const_true(lhs) !=
                              cond::is_const_true(rhs));
      }
      if (cond::is_const_false(lhs)) return rhs;
      if (cond::is_const_false(rhs)) return lhs;
      if (cond::is_const_true(lhs)) return cond::negate(std::move(rhs));
      if (cond::is_const_true(rhs)) return cond::negate(std::move(lhs));
      if (lhs == c->lhs && rhs == c->rhs) return c;
      return cond::exclusive(std::move(lhs), std::move(rhs));
    }
  }
  throw std::logic_error("unknown condition node");
}

}  // namespace

Condition simplify_abstract(const Condition& condition,
                            const AbstractClassicalState& classical) {
  return fold(condition, [&classical](const ConditionNode& atom) -> Condition {
    if (atom.kind == ConditionNode::Kind::AtomProb) {
      throw std::invalid_argument(
          "probabilistic control in a compile-time guard");
    }
    switch (classical.token(atom.index)) {
      case Token::Zero: return cond::constant(false);
      case Token::One: return cond::constant(true);
      case Token::Prob: return cond::prob(atom.index);
      case Token::Top: return cond::bit(atom.index);
    }
    throw std::logic_error("unknown token");
  });
}

Condition simplify_instance(const Condition& condition,
                            const ControlAssignment& assignment) {
  return fold(condition, [&assignment](const ConditionNode& atom) -> Condition {
    if (atom.kind == ConditionNode::Kind::AtomBit) {
      return cond::bit(atom.index);
    }
    auto it = assignment.find(atom.index);
    if (it == assignment.end()) {
      throw std::invalid_argument(
          "probabilistic control read before binding");
    }
    return cond::constant(it->second == ProbControlValue::P1);
  });
}

bool eval_concrete(const Condition& condition, const std::vector<bool>& bits,
                   const ControlAssignment* controls) {
  switch (condition->kind) {
    case ConditionNode::Kind::AtomBit:
      if (condition->index < 0 ||
          condition->index >= static_cast<int>(bits.size())) {
        throw std::out_of_range("bit index out of range");
      }
      return bits[condition->index];
    case ConditionNode::Kind::AtomProb: {
      if (controls == nullptr) {
        throw std::invalid_argument("probabilistic control in this dialect");
      }
      auto it = controls->find(condition->index);
      if (it == controls->end()) {
        throw std::invalid_argument(
            "probabilistic control read before binding");
      }
      return it->second == ProbControlValue::P1;
    }
    case ConditionNode::Kind::ConstTrue:
      return true;
    case ConditionNode::Kind::ConstFalse:
      return false;
    case ConditionNode::Kind::Not:
      return !eval_concrete(condition->lhs, bits, controls);
    case ConditionNode::Kind::And:
      return eval_concrete(condition->lhs, bits, controls) &&
             eval_concrete(condition->rhs, bits, controls);
    case ConditionNode::Kind::Or:
      return eval_concrete(condition->lhs, bits, controls) ||
             eval_concrete(condition->rhs, bits, controls);
    case ConditionNode::Kind::Xor:
      return eval_concrete(condition->lhs, bits, controls) !=
             eval_concrete(condition->rhs, bits, controls);
  }
  throw std::logic_error("unknown condition node");
}

}  // namespace dcprop
