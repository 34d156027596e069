#pragma once

#include <optional>
#include <vector>

#include "dcprop/ir.hpp"

namespace dcprop {

enum class QubitStatusKind { Ket0, Ket1, Superposition, Top };

struct QubitStatus {
  QubitStatusKind kind = QubitStatusKind::Top;

  bool deterministic() const {
    return kind == QubitStatusKind::Ket0 || kind == QubitStatusKind::Ket1;
  }
};

/// View of one entanglement group: its qubits in ascending order and the
/// tracked state, absent when the group is top.
struct GroupView {
  std::vector<int> qubits;
  std::optional<SparseState> state;
};

/// Abstract state of the quantum register: a partition of the qubits into
/// entanglement groups, each either tracked by an exact sparse state or top.
/// Groups stop being tracked once they grow past `group_threshold` qubits or
/// `state_size_threshold` nonzero amplitudes; top groups are kept as
/// singletons since top carries no correlation information.
class AbstractQuantumState {
 public:
  AbstractQuantumState(int num_qubits, int group_threshold,
                       int state_size_threshold);

  int num_qubits() const { return num_qubits_; }
  int group_threshold() const { return group_threshold_; }
  int state_size_threshold() const { return state_size_threshold_; }

  QubitStatus status(int qubit) const;

  /// QCP update for a unitary: merges the operand groups and simulates the
  /// gate, or tops the operand groups when a tracking limit is exceeded or
  /// any operand is already top.
  void apply_unitary(const UnitaryInst& inst);

  /// Discards quantum information for the full group of each listed qubit.
  void set_top(const std::vector<int>& qubits);

  /// Detaches the qubit into a fresh singleton tracked |0>. If the qubit sat
  /// in a tracked group without a deterministic value, the rest of the group
  /// is topped.
  void reinit(int qubit);

  GroupView group_of(int qubit) const;

 private:
  struct Group {
    std::vector<int> qubits;           // ascending; empty entries are dead
    std::optional<SparseState> state;  // nullopt = top
  };

  const Group& group(int qubit) const { return groups_[group_of_[qubit]]; }
  int local_pos(const Group& g, int qubit) const;
  void make_top_singletons(int group_index);
  QubitStatus tracked_status(const Group& g, int qubit) const;

  int num_qubits_;
  int group_threshold_;
  int state_size_threshold_;
  std::vector<int> group_of_;
  std::vector<Group> groups_;
};

}  // namespace dcprop
