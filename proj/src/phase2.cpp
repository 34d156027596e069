#include "dcprop/phase2.hpp"

#include <functional>
#include <stdexcept>

#include "dcprop/oracle.hpp"
#include "dcprop/rng.hpp"
#include "dcprop/simplify.hpp"

namespace dcprop {

namespace {

/// Shared Phase II walk; `choose` picks the branch of each probabilistic
/// instruction in instruction order.
Circuit materialize(const Circuit& input,
                    const std::function<int(const std::array<PGateBranch, 2>&)>&
                        choose) {
  Circuit output;
  output.num_qubits = input.num_qubits;
  output.num_bits = input.num_bits;
  output.dialect = Dialect::Instance;

  ControlAssignment assignment;

  auto append_branch = [&output](const std::vector<QubitRef>& operands,
                                 const PGateBranch& branch) {
    if (branch.lead == PGateBranch::Lead::X) {
      output.instructions.push_back(
          UnitaryInst{{GateOp::X, {}}, {operands[0]}});
    }
    if (operands.size() > 1) {
      RotationSpec prep;
      prep.qubits.assign(operands.begin() + 1, operands.end());
      prep.direction = RotationDirection::FromZero;
      prep.state = branch.prep;
      output.instructions.push_back(RotationInst{std::move(prep)});
    }
  };

  for (const Instruction& inst : input.instructions) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, PGateInst>) {
            append_branch(op.operands, op.branches[choose(op.branches)]);
          } else if constexpr (std::is_same_v<T, PBindInst>) {
            const int k = choose(op.branches);
            append_branch(op.operands, op.branches[k]);
            assignment[op.control.index] =
                k == 0 ? ProbControlValue::P0 : ProbControlValue::P1;
          } else if constexpr (std::is_same_v<T, IfElseInst>) {
            const Condition resolved =
                simplify_instance(op.condition, assignment);
            if (cond::is_const_true(resolved)) {
              for (const UnitaryInst& u : op.then_branch) {
                output.instructions.push_back(u);
              }
            } else if (cond::is_const_false(resolved)) {
              for (const UnitaryInst& u : op.else_branch) {
                output.instructions.push_back(u);
              }
            } else {
              IfElseInst rewritten = op;
              rewritten.condition = resolved;
              output.instructions.push_back(std::move(rewritten));
            }
          } else {
            output.instructions.push_back(op);
          }
        },
        inst);
  }
  return output;
}

int count_probabilistic(const Circuit& circuit) {
  int count = 0;
  for (const Instruction& inst : circuit.instructions) {
    if (std::holds_alternative<PGateInst>(inst) ||
        std::holds_alternative<PBindInst>(inst)) {
      ++count;
    }
  }
  return count;
}

}  // namespace

Circuit instantiate(const Circuit& probabilistic, std::uint64_t seed) {
  if (probabilistic.dialect != Dialect::Probabilistic) {
    throw std::invalid_argument("phase 2 expects a probabilistic circuit");
  }
  Rng rng(seed);
  return materialize(probabilistic,
                     [&rng](const std::array<PGateBranch, 2>& branches) {
                       return rng.uniform() < branches[0].prob ? 0 : 1;
                     });
}

std::vector<std::pair<Circuit, double>> enumerate_instances(
    const Circuit& probabilistic) {
  if (probabilistic.dialect != Dialect::Probabilistic) {
    throw std::invalid_argument("phase 2 expects a probabilistic circuit");
  }
  const int k = count_probabilistic(probabilistic);
  if (k > kMaxEnumeratedProbInstructions) {
    throw ResourceLimitError(
        "too many probabilistic instructions to enumerate (" +
        std::to_string(k) + " > " +
        std::to_string(kMaxEnumeratedProbInstructions) + ")");
  }

  std::vector<std::pair<Circuit, double>> instances;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double probability = 1.0;
    int next = 0;
    bool dead_branch = false;
    auto choose = [&](const std::array<PGateBranch, 2>& branches) {
      const int choice = static_cast<int>((mask >> next) & 1u);
      ++next;
      const double p = branches[choice].prob;
      if (p == 0.0) dead_branch = true;
      probability *= p;
      return choice;
    };
    Circuit instance = materialize(probabilistic, choose);
    if (dead_branch) continue;
    instances.emplace_back(std::move(instance), probability);
  }
  return instances;
}

}  // namespace dcprop
