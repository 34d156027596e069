#include "dcprop/qcp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dcprop {

AbstractQuantumState::AbstractQuantumState(int num_qubits, int group_threshold,
                                           int state_size_threshold)
    : num_qubits_(num_qubits),
      group_threshold_(group_threshold),
      state_size_threshold_(state_size_threshold) {
  if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
  if (group_threshold < 1 || state_size_threshold < 1) {
    throw std::invalid_argument("thresholds must be positive");
  }
  group_of_.resize(num_qubits);
  groups_.reserve(num_qubits);
  for (int q = 0; q < num_qubits; ++q) {
    group_of_[q] = q;
    groups_.push_back({{q}, SparseState::zero(1)});
  }
}

int AbstractQuantumState::local_pos(const Group& g, int qubit) const {
  const auto it = std::lower_bound(g.qubits.begin(), g.qubits.end(), qubit);
  return static_cast<int>(it - g.qubits.begin());
}

QubitStatus AbstractQuantumState::tracked_status(const Group& g,
                                                 int qubit) const {
  const int pos = local_pos(g, qubit);
  double weight1 = 0.0;
  for (const auto& [b, a] : g.state->amplitudes()) {
    if ((b >> pos) & 1u) weight1 += std::norm(a);
  }
  if (weight1 <= kNormTol) return {QubitStatusKind::Ket0};
  if (weight1 >= 1.0 - kNormTol) return {QubitStatusKind::Ket1};
  return {QubitStatusKind::Superposition};
}

QubitStatus AbstractQuantumState::status(int qubit) const {
  const Group& g = group(qubit);
  if (!g.state.has_value()) return {QubitStatusKind::Top};
  return tracked_status(g, qubit);
}

void AbstractQuantumState::make_top_singletons(int group_index) {
  Group& g = groups_[group_index];
  const std::vector<int> members = g.qubits;
  g.qubits.clear();
  g.state.reset();
  for (int q : members) {
    group_of_[q] = static_cast<int>(groups_.size());
    groups_.push_back({{q}, std::nullopt});
  }
}

void AbstractQuantumState::set_top(const std::vector<int>& qubits) {
  std::set<int> group_indices;
  for (int q : qubits) group_indices.insert(group_of_[q]);
  for (int gi : group_indices) {
    if (!groups_[gi].state.has_value() && groups_[gi].qubits.size() == 1) {
      continue;  // already a top singleton
    }
    make_top_singletons(gi);
  }
}

void AbstractQuantumState::apply_unitary(const UnitaryInst& inst) {
  std::set<int> group_indices;
  std::vector<int> operand_qubits;
  for (const QubitRef& q : inst.operands) {
    group_indices.insert(group_of_[q.index]);
    operand_qubits.push_back(q.index);
  }

  bool any_top = false;
  std::size_t merged_qubits = 0;
  for (int gi : group_indices) {
    if (!groups_[gi].state.has_value()) any_top = true;
    merged_qubits += groups_[gi].qubits.size();
  }
  if (any_top || merged_qubits > static_cast<std::size_t>(group_threshold_)) {
    set_top(operand_qubits);
    return;
  }

  // merge all operand groups into the first, in tensor order
  auto it = group_indices.begin();
  int target = *it++;
  for (; it != group_indices.end(); ++it) {
    Group& a = groups_[target];
    Group& b = groups_[*it];
    SparseState merged =
        merge_groups(*a.state, a.qubits, *b.state, b.qubits);
    std::vector<int> qubits = a.qubits;
    qubits.insert(qubits.end(), b.qubits.begin(), b.qubits.end());
    std::sort(qubits.begin(), qubits.end());
    a.qubits = std::move(qubits);
    a.state = std::move(merged);
    for (int q : b.qubits) group_of_[q] = target;
    b.qubits.clear();
    b.state.reset();
  }

  Group& g = groups_[target];
  if (g.state->size() > state_size_threshold_) {
    make_top_singletons(target);
    return;
  }

  std::vector<int> positions;
  positions.reserve(inst.operands.size());
  for (const QubitRef& q : inst.operands) {
    positions.push_back(local_pos(g, q.index));
  }
  g.state = apply_gate(*g.state, inst.gate, positions);
  if (g.state->size() > state_size_threshold_) {
    make_top_singletons(target);
  }
}

void AbstractQuantumState::reinit(int qubit) {
  const int gi = group_of_[qubit];
  Group& g = groups_[gi];

  if (g.qubits.size() == 1) {
    g.state = SparseState::zero(1);
    return;
  }

  // multi-qubit tracked group: peel the qubit off, keeping the rest tracked
  // only when the qubit's value was deterministic
  const QubitStatus st = tracked_status(g, qubit);
  if (st.deterministic()) {
    const int pos = local_pos(g, qubit);
    const Decomposition d = decompose(*g.state, pos);
    g.state = st.kind == QubitStatusKind::Ket0 ? d.phi0 : d.phi1;
    g.qubits.erase(std::find(g.qubits.begin(), g.qubits.end(), qubit));
  } else {
    std::vector<int> rest;
    for (int q : g.qubits) {
      if (q != qubit) rest.push_back(q);
    }
    g.qubits.clear();
    g.state.reset();
    for (int q : rest) {
      group_of_[q] = static_cast<int>(groups_.size());
      groups_.push_back({{q}, std::nullopt});
    }
  }

  group_of_[qubit] = static_cast<int>(groups_.size());
  groups_.push_back({{qubit}, SparseState::zero(1)});
}

GroupView AbstractQuantumState::group_of(int qubit) const {
  const Group& g = group(qubit);
  return {g.qubits, g.state};
}

}  // namespace dcprop
