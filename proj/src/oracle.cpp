#include "dcprop/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace dcprop {

namespace {

std::uint64_t extract_bits(std::uint64_t b, const std::vector<int>& positions) {
  std::uint64_t sub = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    sub |= ((b >> positions[t]) & 1u) << t;
  }
  return sub;
}

std::uint64_t scatter_bits(std::uint64_t sub,
                           const std::vector<int>& positions) {
  std::uint64_t b = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    b |= ((sub >> t) & 1u) << positions[t];
  }
  return b;
}

/// Householder data for R mapping |psi> to e^{i theta}|0...0>, with the
/// phase fix folded in so that U|psi> = |0...0> exactly.
struct HouseholderRotation {
  SparseState::AmplitudeMap v;  // |psi> - e^{i theta}|0...0>
  double v_norm_squared = 0.0;
  double theta = 0.0;
  bool identity_like = false;  // |psi> is |0...0> up to phase
};

HouseholderRotation householder_for(const SparseState& psi) {
  HouseholderRotation h;
  const Complex a0 = psi.amplitude(0);
  if (std::abs(a0) > 0.0) {
    h.theta = std::arg(a0);
  } else {
    h.theta = std::arg(psi.amplitudes().begin()->second);
  }
  h.v = psi.amplitudes();
  h.v[0] -= std::polar(1.0, h.theta);
  double n2 = 0.0;
  for (const auto& [b, amp] : h.v) {
    (void)b;
    n2 += std::norm(amp);
  }
  h.v_norm_squared = n2;
  if (n2 < kPruneEps * kPruneEps) h.identity_like = true;
  return h;
}

}  // namespace

SparseState apply_rotation(const SparseState& state,
                           const RotationSpec& spec) {
  std::vector<int> positions;
  positions.reserve(spec.qubits.size());
  for (const QubitRef& q : spec.qubits) positions.push_back(q.index);

  const HouseholderRotation h = householder_for(spec.state);
  const bool to_zero = spec.direction == RotationDirection::ToZero;
  const Complex phase = std::polar(1.0, to_zero ? -h.theta : h.theta);

  if (h.identity_like) {
    SparseState::AmplitudeMap out;
    for (const auto& [b, a] : state.amplitudes()) out[b] = a * phase;
    SparseState result(state.num_qubits(), std::move(out));
    result.prune_and_renormalize();
    return result;
  }

  // reflection acts within the group subspace, per class of the other bits
  const std::uint64_t group_mask =
      scatter_bits((positions.empty()
                        ? 0
                        : (std::uint64_t{1} << positions.size()) - 1),
                   positions);
  std::map<std::uint64_t, Complex> dot;  // rest index -> <v|x_rest>
  for (const auto& [b, a] : state.amplitudes()) {
    const std::uint64_t sub = extract_bits(b, positions);
    auto it = h.v.find(sub);
    if (it == h.v.end()) continue;
    dot[b & ~group_mask] += std::conj(it->second) * a;
  }

  SparseState::AmplitudeMap out = state.amplitudes();
  const double scale = 2.0 / h.v_norm_squared;
  for (const auto& [rest, d] : dot) {
    if (d == Complex{0.0, 0.0}) continue;
    for (const auto& [sub, vamp] : h.v) {
      out[rest | scatter_bits(sub, positions)] -= scale * vamp * d;
    }
  }
  for (auto& [b, a] : out) {
    (void)b;
    a *= phase;
  }
  SparseState result(state.num_qubits(), std::move(out));
  result.prune_and_renormalize();
  return result;
}

namespace {

class Simulator {
 public:
  Simulator(const Circuit& circuit, int max_paths)
      : circuit_(circuit), max_paths_(max_paths) {}

  Ensemble run() {
    if (circuit_.num_qubits > kMaxOracleQubits) {
      throw ResourceLimitError(
          "circuit exceeds the exact-simulation qubit cap (" +
          std::to_string(kMaxOracleQubits) + ")");
    }
    Ensemble paths;
    paths.push_back(
        {SparseState::zero(circuit_.num_qubits),
         std::vector<bool>(static_cast<std::size_t>(circuit_.num_bits)),
         {},
         1.0});
    for (const Instruction& inst : circuit_.instructions) {
      Ensemble next;
      for (PathState& path : paths) {
        step(inst, std::move(path), next);
      }
      if (static_cast<int>(next.size()) > max_paths_) {
        throw ResourceLimitError("path count exceeds the cap (" +
                                 std::to_string(max_paths_) + ")");
      }
      paths = std::move(next);
    }
    return paths;
  }

 private:
  void apply_unitary_to(PathState& path, const UnitaryInst& u) const {
    std::vector<int> positions;
    positions.reserve(u.operands.size());
    for (const QubitRef& q : u.operands) positions.push_back(q.index);
    path.state = apply_gate(path.state, u.gate, positions);
  }

  void apply_branch(PathState& path, const std::vector<QubitRef>& operands,
                    const PGateBranch& branch) const {
    if (branch.lead == PGateBranch::Lead::X) {
      apply_unitary_to(path, UnitaryInst{{GateOp::X, {}}, {operands[0]}});
    }
    if (operands.size() > 1) {
      RotationSpec prep;
      prep.qubits.assign(operands.begin() + 1, operands.end());
      prep.direction = RotationDirection::FromZero;
      prep.state = branch.prep;
      path.state = apply_rotation(path.state, prep);
    }
  }

  void split_two_branches(PathState path,
                          const std::vector<QubitRef>& operands,
                          const std::array<PGateBranch, 2>& branches,
                          const ProbControlId* control, Ensemble& out) const {
    for (int k = 0; k < 2; ++k) {
      const PGateBranch& branch = branches[k];
      if (branch.prob < kPruneEps) continue;
      PathState child = path;
      child.probability *= branch.prob;
      apply_branch(child, operands, branch);
      if (control != nullptr) {
        child.controls[control->index] =
            k == 0 ? ProbControlValue::P0 : ProbControlValue::P1;
      }
      out.push_back(std::move(child));
    }
  }

  void step(const Instruction& inst, PathState path, Ensemble& out) const {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, UnitaryInst>) {
            apply_unitary_to(path, op);
            out.push_back(std::move(path));
          } else if constexpr (std::is_same_v<T, MeasureInst>) {
            split_collapse(std::move(path), op.qubit.index, op.bit.index,
                           /*force_zero=*/false, out);
          } else if constexpr (std::is_same_v<T, ResetInst>) {
            split_collapse(std::move(path), op.qubit.index, -1,
                           /*force_zero=*/true, out);
          } else if constexpr (std::is_same_v<T, IfElseInst>) {
            const ControlAssignment* controls =
                circuit_.dialect == Dialect::Probabilistic ? &path.controls
                                                           : nullptr;
            const bool taken =
                eval_concrete(op.condition, path.bits, controls);
            for (const UnitaryInst& u :
                 taken ? op.then_branch : op.else_branch) {
              apply_unitary_to(path, u);
            }
            out.push_back(std::move(path));
          } else if constexpr (std::is_same_v<T, RotationInst>) {
            path.state = apply_rotation(path.state, op.spec);
            out.push_back(std::move(path));
          } else if constexpr (std::is_same_v<T, PGateInst>) {
            split_two_branches(std::move(path), op.operands, op.branches,
                               nullptr, out);
          } else if constexpr (std::is_same_v<T, PBindInst>) {
            split_two_branches(std::move(path), op.operands, op.branches,
                               &op.control, out);
          }
        },
        inst);
  }

  /// Measurement-style branching on one qubit. Writes the outcome into
  /// `bit` when it is nonnegative; forces the qubit to |0> when asked
  /// (the reset channel).
  void split_collapse(PathState path, int qubit, int bit, bool force_zero,
                      Ensemble& out) const {
    const Decomposition d = decompose(path.state, qubit);
    for (int k = 0; k < 2; ++k) {
      const bool present = k == 0 ? d.has_branch0 : d.has_branch1;
      if (!present) continue;
      const Complex lambda = k == 0 ? d.lambda0 : d.lambda1;
      const SparseState& phi = k == 0 ? d.phi0 : d.phi1;
      const double weight = std::norm(lambda);
      if (weight < kPruneEps) continue;
      PathState child = path;
      child.probability *= weight;
      // the branch keeps its phase: state = (lambda/|lambda|)|k>|phi_k>
      SparseState collapsed =
          tensor_insert(phi, force_zero ? 0 : k, qubit);
      SparseState::AmplitudeMap amps = collapsed.amplitudes();
      const Complex phase = lambda / std::abs(lambda);
      for (auto& [b, a] : amps) {
        (void)b;
        a *= phase;
      }
      child.state = SparseState(path.state.num_qubits(), std::move(amps));
      if (bit >= 0) child.bits[bit] = k == 1;
      out.push_back(std::move(child));
    }
  }

  const Circuit& circuit_;
  int max_paths_;
};

}  // namespace

Ensemble simulate(const Circuit& circuit, int max_paths) {
  return Simulator(circuit, max_paths).run();
}

DensityMatrix ensemble_density(const Ensemble& ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("empty ensemble");
  }
  const int n = ensemble.front().state.num_qubits();
  if (n > kMaxOracleQubits) {
    throw ResourceLimitError("density matrix too large");
  }
  DensityMatrix rho;
  rho.num_qubits = n;
  rho.values.assign(std::size_t{1} << (2 * n), Complex{0.0, 0.0});
  for (const PathState& path : ensemble) {
    for (const auto& [row, ar] : path.state.amplitudes()) {
      for (const auto& [col, ac] : path.state.amplitudes()) {
        rho.values[(row << n) + col] +=
            path.probability * ar * std::conj(ac);
      }
    }
  }
  return rho;
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    sum += std::norm(a.values[i] - b.values[i]);
  }
  return std::sqrt(sum);
}

double equivalence_distance(const Circuit& a, const Circuit& b,
                            int max_paths) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("circuits have different register sizes");
  }
  const DensityMatrix rho_a = ensemble_density(simulate(a, max_paths));
  const DensityMatrix rho_b = ensemble_density(simulate(b, max_paths));
  return frobenius_distance(rho_a, rho_b);
}

DensityMatrix mixture_density(
    const std::vector<std::pair<Circuit, double>>& instances, int max_paths) {
  if (instances.empty()) {
    throw std::invalid_argument("empty instance list");
  }
  DensityMatrix total;
  bool first = true;
  for (const auto& [circuit, probability] : instances) {
    DensityMatrix rho = ensemble_density(simulate(circuit, max_paths));
    if (first) {
      total.num_qubits = rho.num_qubits;
      total.values.assign(rho.values.size(), Complex{0.0, 0.0});
      first = false;
    }
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
      total.values[i] += probability * rho.values[i];
    }
  }
  return total;
}

}  // namespace dcprop
