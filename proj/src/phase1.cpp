#include "dcprop/phase1.hpp"

#include <set>
#include <stdexcept>

#include "dcprop/ccp.hpp"
#include "dcprop/frontend.hpp"
#include "dcprop/qcp.hpp"
#include "dcprop/simplify.hpp"
#include "dcprop/synth.hpp"

namespace dcprop {

const char* rewrite_action_name(RewriteAction action) {
  switch (action) {
    case RewriteAction::Kept: return "kept";
    case RewriteAction::Dropped: return "dropped";
    case RewriteAction::ReplacedUnitary: return "replaced_unitary";
    case RewriteAction::ReplacedProbabilistic: return "replaced_probabilistic";
    case RewriteAction::GuardSimplified: return "guard_simplified";
    case RewriteAction::GuardEliminated: return "guard_eliminated";
  }
  return "?";
}

namespace {

class Phase1Pass {
 public:
  Phase1Pass(const Circuit& input, int group_threshold,
             int state_size_threshold)
      : input_(input),
        state_size_threshold_(state_size_threshold),
        quantum_(input.num_qubits, group_threshold, state_size_threshold),
        classical_(input.num_bits) {}

  Phase1Result run() {
    output_.num_qubits = input_.num_qubits;
    output_.num_bits = input_.num_bits;
    output_.dialect = Dialect::Probabilistic;

    for (const Instruction& inst : input_.instructions) {
      std::visit([this](const auto& op) { handle(op); }, inst);
    }

    report_.input_stats = circuit_stats(input_);
    report_.output_stats = circuit_stats(output_);
    report_.feedforward_free_ccop =
        report_.output_stats.if_else_no_classical_atoms;
    return {std::move(output_), std::move(report_)};
  }

 private:
  void record(RewriteAction action) { report_.outcomes.push_back({action}); }

  void append(Instruction inst) {
    output_.instructions.push_back(std::move(inst));
  }

  void handle(const UnitaryInst& u) {
    quantum_.apply_unitary(u);
    append(u);
    record(RewriteAction::Kept);
  }

  void keep_measure_as_top(const MeasureInst& m) {
    append(m);
    quantum_.set_top({m.qubit.index});
    classical_.update_measure(m.bit.index, {QubitStatusKind::Top});
    record(RewriteAction::Kept);
  }

  void handle(const MeasureInst& m) {
    const QubitStatus status = quantum_.status(m.qubit.index);
    switch (status.kind) {
      case QubitStatusKind::Ket0:
      case QubitStatusKind::Ket1:
        // outcome deterministic: drop the measurement, remember the value
        classical_.update_measure(m.bit.index, status);
        record(RewriteAction::Dropped);
        ++report_.dropped_measure;
        return;
      case QubitStatusKind::Top:
        append(m);
        classical_.update_measure(m.bit.index, status);
        record(RewriteAction::Kept);
        return;
      case QubitStatusKind::Superposition:
        break;
    }

    const GroupView group = quantum_.group_of(m.qubit.index);
    MeasureSynthResult synth =
        measurement_pgate(group.qubits, *group.state, m.qubit.index,
                          m.bit.index, state_size_threshold_);
    if (std::holds_alternative<RewriteSkipped>(synth)) {
      keep_measure_as_top(m);
      return;
    }
    if (const auto* det = std::get_if<DeterministicOutcome>(&synth)) {
      classical_.update_measure(
          m.bit.index, {det->value == 0 ? QubitStatusKind::Ket0
                                        : QubitStatusKind::Ket1});
      record(RewriteAction::Dropped);
      ++report_.dropped_measure;
      return;
    }

    auto& rewrite = std::get<MeasureRewrite>(synth);
    append(std::move(rewrite.rotation));
    append(std::move(rewrite.pbind));
    classical_.update_measure(m.bit.index, status);
    quantum_.set_top(group.qubits);
    record(RewriteAction::ReplacedProbabilistic);
    ++report_.replaced_measure;
  }

  void handle(const ResetInst& r) {
    const QubitStatus status = quantum_.status(r.qubit.index);
    switch (status.kind) {
      case QubitStatusKind::Ket0:
        record(RewriteAction::Dropped);
        ++report_.dropped_reset;
        break;
      case QubitStatusKind::Ket1:
        append(UnitaryInst{{GateOp::X, {}}, {r.qubit}});
        record(RewriteAction::ReplacedUnitary);
        ++report_.replaced_reset;
        break;
      case QubitStatusKind::Top:
        append(r);
        record(RewriteAction::Kept);
        break;
      case QubitStatusKind::Superposition: {
        const GroupView group = quantum_.group_of(r.qubit.index);
        ResetSynthResult synth = reset_pgate(
            group.qubits, *group.state, r.qubit.index, state_size_threshold_);
        if (std::holds_alternative<RewriteSkipped>(synth)) {
          append(r);
          quantum_.set_top(group.qubits);
          record(RewriteAction::Kept);
        } else if (const auto* det =
                       std::get_if<DeterministicOutcome>(&synth)) {
          if (det->value == 1) {
            append(UnitaryInst{{GateOp::X, {}}, {r.qubit}});
            record(RewriteAction::ReplacedUnitary);
            ++report_.replaced_reset;
          } else {
            record(RewriteAction::Dropped);
            ++report_.dropped_reset;
          }
        } else {
          auto& rewrite = std::get<ResetRewrite>(synth);
          append(std::move(rewrite.rotation));
          append(std::move(rewrite.pgate));
          quantum_.set_top(group.qubits);
          record(RewriteAction::ReplacedProbabilistic);
          ++report_.replaced_reset;
        }
        break;
      }
    }
    quantum_.reinit(r.qubit.index);
  }

  void inline_branch(const std::vector<UnitaryInst>& branch) {
    for (const UnitaryInst& u : branch) {
      quantum_.apply_unitary(u);
      append(u);
    }
  }

  void handle(const IfElseInst& inst) {
    const Condition simplified =
        simplify_abstract(inst.condition, classical_);

    if (cond::is_const_true(simplified) || cond::is_const_false(simplified)) {
      const bool taken = cond::is_const_true(simplified);
      inline_branch(taken ? inst.then_branch : inst.else_branch);
      report_.outcomes.push_back({RewriteAction::GuardEliminated,
                                  print_condition(inst.condition), "",
                                  taken});
      ++report_.eliminated_ccop;
      return;
    }

    IfElseInst rewritten = inst;
    rewritten.condition = simplified;
    append(std::move(rewritten));

    // the executed branch is unknown at compile time: discard quantum
    // information for every qubit either branch can touch
    std::set<int> touched;
    for (const auto* branch : {&inst.then_branch, &inst.else_branch}) {
      for (const UnitaryInst& u : *branch) {
        for (const QubitRef& q : u.operands) touched.insert(q.index);
      }
    }
    quantum_.set_top({touched.begin(), touched.end()});

    if (cond::structurally_equal(simplified, inst.condition)) {
      record(RewriteAction::Kept);
    } else {
      report_.outcomes.push_back({RewriteAction::GuardSimplified,
                                  print_condition(inst.condition),
                                  print_condition(simplified), false});
    }
  }

  void handle(const RotationInst&) { illegal_input(); }
  void handle(const PGateInst&) { illegal_input(); }
  void handle(const PBindInst&) { illegal_input(); }

  [[noreturn]] void illegal_input() {
    throw std::invalid_argument(
        "probabilistic instruction in a dynamic circuit");
  }

  const Circuit& input_;
  int state_size_threshold_;
  AbstractQuantumState quantum_;
  AbstractClassicalState classical_;
  Circuit output_;
  RewriteReport report_;
};

}  // namespace

Phase1Result run_phase1(const Circuit& dynamic_circuit, int group_threshold,
                        int state_size_threshold) {
  if (dynamic_circuit.dialect != Dialect::Dynamic) {
    throw std::invalid_argument("phase 1 expects a dynamic circuit");
  }
  auto violations = validate(dynamic_circuit);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid input circuit: " +
                                violations.front().message);
  }
  return Phase1Pass(dynamic_circuit, group_threshold, state_size_threshold)
      .run();
}

}  // namespace dcprop
