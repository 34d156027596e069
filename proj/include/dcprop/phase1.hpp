#pragma once

#include <string>
#include <vector>

#include "dcprop/ir.hpp"

namespace dcprop {

inline constexpr int kDefaultGroupThreshold = 8;
inline constexpr int kDefaultStateSizeThreshold = 64;

enum class RewriteAction {
  Kept,                    // appended unchanged
  Dropped,                 // removed with no replacement
  ReplacedUnitary,         // reset of a known |1> became an X gate
  ReplacedProbabilistic,   // measurement/reset became rotation + pgate/pbind
  GuardSimplified,         // guard rewritten, operation kept conditional
  GuardEliminated,         // guard folded to a constant, one branch inlined
};

const char* rewrite_action_name(RewriteAction action);

struct RewriteOutcome {
  RewriteAction action = RewriteAction::Kept;
  std::string guard_before;  // set for GuardSimplified / GuardEliminated
  std::string guard_after;   // set for GuardSimplified
  bool branch_taken = false; // set for GuardEliminated: then=true, else=false
};

/// Per-instruction log of one Phase I run plus the aggregate counts behind
/// the removal metric.
struct RewriteReport {
  std::vector<RewriteOutcome> outcomes;  // one per input instruction

  StatsRecord input_stats;
  StatsRecord output_stats;

  /// Guards folded to a constant: the operation became unconditional.
  int eliminated_ccop = 0;
  /// Guards kept in the output with no classical atoms left (constant-free
  /// by construction, probabilistic controls only).
  int feedforward_free_ccop = 0;
  int dropped_measure = 0;
  int replaced_measure = 0;
  int dropped_reset = 0;
  int replaced_reset = 0;

  /// The removal metric: classically controlled operations whose guard no
  /// longer mentions any classical bit after the pass.
  int removed_ccop() const { return eliminated_ccop + feedforward_free_ccop; }
};

struct Phase1Result {
  Circuit circuit;  // the probabilistic circuit D'
  RewriteReport report;
};

/// One in-order sweep over a dynamic circuit, propagating quantum and
/// classical information and removing or rewriting dynamic constructs.
/// The input must validate as Dynamic.
Phase1Result run_phase1(const Circuit& dynamic_circuit,
                        int group_threshold = kDefaultGroupThreshold,
                        int state_size_threshold = kDefaultStateSizeThreshold);

}  // namespace dcprop
