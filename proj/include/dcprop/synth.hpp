#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dcprop/ir.hpp"

namespace dcprop {

/// Signals that a rewrite was not performed because the tracked state is
/// larger than the synthesis threshold; the caller keeps the original
/// instruction. Not an error.
struct RewriteSkipped {};

/// Signals that the decomposition was degenerate: the qubit already holds
/// the deterministic value `value`, so no probabilistic construct is needed.
struct DeterministicOutcome {
  int value = 0;
};

struct MeasureRewrite {
  RotationInst rotation;
  PBindInst pbind;
};

struct ResetRewrite {
  RotationInst rotation;
  PGateInst pgate;
};

using MeasureSynthResult =
    std::variant<MeasureRewrite, DeterministicOutcome, RewriteSkipped>;
using ResetSynthResult =
    std::variant<ResetRewrite, DeterministicOutcome, RewriteSkipped>;

/// Rotation mapping `state` (over the group, ascending) to |0...0>.
std::optional<RotationInst> rotation_to_zero(const std::vector<int>& group,
                                             const SparseState& state,
                                             int state_size_threshold);

/// Builds the measurement replacement: the to-zero rotation plus a
/// probabilistic gate-control binding whose branches reconstruct the two
/// post-measurement states. Operands are (measured qubit, rest ascending).
MeasureSynthResult measurement_pgate(const std::vector<int>& group,
                                     const SparseState& state,
                                     int measured_qubit, int control_id,
                                     int state_size_threshold);

/// Builds the reset replacement; both branches keep the reset qubit in |0>.
ResetSynthResult reset_pgate(const std::vector<int>& group,
                             const SparseState& state, int reset_qubit,
                             int state_size_threshold);

}  // namespace dcprop
