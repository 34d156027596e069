#pragma once

#include <map>
#include <vector>

#include "dcprop/ccp.hpp"
#include "dcprop/ir.hpp"

namespace dcprop {

using ControlAssignment = std::map<int, ProbControlValue>;

/// Compile-time guard simplification against the abstract classical state.
/// Bits known ZERO/ONE fold to constants, PROB bits become probabilistic
/// controls, TOP bits stay as bit atoms; folding uses short-circuit
/// identities only, no algebraic rewriting. Throws std::invalid_argument if
/// the input already contains a probabilistic control.
Condition simplify_abstract(const Condition& condition,
                            const AbstractClassicalState& classical);

/// Instantiation-time simplification: substitutes each probabilistic control
/// with its sampled value and folds. The result never contains a
/// probabilistic control. Throws std::invalid_argument when a control is
/// read without an assignment.
Condition simplify_instance(const Condition& condition,
                            const ControlAssignment& assignment);

/// Concrete boolean evaluation; the testing oracle for both simplifiers.
/// Probabilistic atoms read `controls`; passing nullptr makes them an error.
bool eval_concrete(const Condition& condition, const std::vector<bool>& bits,
                   const ControlAssignment* controls = nullptr);

}  // namespace dcprop
