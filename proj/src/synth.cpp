#include "dcprop/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcprop {

namespace {

std::vector<QubitRef> to_refs(const std::vector<int>& qubits) {
  std::vector<QubitRef> refs;
  refs.reserve(qubits.size());
  for (int q : qubits) refs.push_back(QubitRef{q});
  return refs;
}

int local_pos_of(const std::vector<int>& group, int qubit) {
  const auto it = std::find(group.begin(), group.end(), qubit);
  if (it == group.end()) {
    throw std::invalid_argument("qubit is not in the group");
  }
  return static_cast<int>(it - group.begin());
}

/// Operand tuple (q_j, q_{r_1}, ..., q_{r_{l-1}}) with the rest ascending.
std::vector<QubitRef> pgate_operands(const std::vector<int>& group,
                                     int leading_qubit) {
  std::vector<QubitRef> operands;
  operands.push_back(QubitRef{leading_qubit});
  for (int q : group) {
    if (q != leading_qubit) operands.push_back(QubitRef{q});
  }
  return operands;
}

struct BranchPair {
  std::array<PGateBranch, 2> branches;
  bool degenerate = false;
  int deterministic_value = 0;
};

BranchPair make_branches(const Decomposition& d, PGateBranch::Lead lead0,
                         PGateBranch::Lead lead1) {
  BranchPair result;
  const double p0 = std::norm(d.lambda0);
  const double p1 = std::norm(d.lambda1);
  if (!d.has_branch0 || std::abs(d.lambda0) < kPruneEps) {
    result.degenerate = true;
    result.deterministic_value = 1;
    return result;
  }
  if (!d.has_branch1 || std::abs(d.lambda1) < kPruneEps) {
    result.degenerate = true;
    result.deterministic_value = 0;
    return result;
  }
  result.branches[0] = PGateBranch{lead0, d.phi0, p0};
  result.branches[1] = PGateBranch{lead1, d.phi1, p1};
  return result;
}

}  // namespace

std::optional<RotationInst> rotation_to_zero(const std::vector<int>& group,
                                             const SparseState& state,
                                             int state_size_threshold) {
  if (static_cast<int>(group.size()) != state.num_qubits()) {
    throw std::invalid_argument("group does not match state width");
  }
  if (state.size() > state_size_threshold) return std::nullopt;
  RotationSpec spec;
  spec.qubits = to_refs(group);
  spec.direction = RotationDirection::ToZero;
  spec.state = state;
  return RotationInst{std::move(spec)};
}

MeasureSynthResult measurement_pgate(const std::vector<int>& group,
                                     const SparseState& state,
                                     int measured_qubit, int control_id,
                                     int state_size_threshold) {
  auto rotation = rotation_to_zero(group, state, state_size_threshold);
  if (!rotation) return RewriteSkipped{};

  const int pos = local_pos_of(group, measured_qubit);
  const Decomposition d = decompose(state, pos);
  BranchPair pair = make_branches(d, PGateBranch::Lead::I,
                                  PGateBranch::Lead::X);
  if (pair.degenerate) return DeterministicOutcome{pair.deterministic_value};

  PBindInst pbind;
  pbind.operands = pgate_operands(group, measured_qubit);
  pbind.branches = std::move(pair.branches);
  pbind.control = ProbControlId{control_id};
  return MeasureRewrite{std::move(*rotation), std::move(pbind)};
}

ResetSynthResult reset_pgate(const std::vector<int>& group,
                             const SparseState& state, int reset_qubit,
                             int state_size_threshold) {
  auto rotation = rotation_to_zero(group, state, state_size_threshold);
  if (!rotation) return RewriteSkipped{};

  const int pos = local_pos_of(group, reset_qubit);
  const Decomposition d = decompose(state, pos);
  BranchPair pair = make_branches(d, PGateBranch::Lead::I,
                                  PGateBranch::Lead::I);
  if (pair.degenerate) return DeterministicOutcome{pair.deterministic_value};

  PGateInst pgate;
  pgate.operands = pgate_operands(group, reset_qubit);
  pgate.branches = std::move(pair.branches);
  return ResetRewrite{std::move(*rotation), std::move(pgate)};
}

}  // namespace dcprop
