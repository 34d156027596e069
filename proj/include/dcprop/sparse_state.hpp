#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace dcprop {

using Complex = std::complex<double>;

/// Amplitudes with |a| below this are dropped after every operation.
inline constexpr double kPruneEps = 1e-12;
/// Tolerance on the squared norm before renormalization kicks in.
inline constexpr double kNormDriftEps = 1e-12;
/// Tolerance used by normalization and determinism checks.
inline constexpr double kNormTol = 1e-9;

/// Normalized sparse complex statevector over an ordered tuple of qubits.
/// Basis index bit j holds the value of local qubit j (qubit 0 is least
/// significant). Only nonzero amplitudes are stored; entries are kept in
/// ascending basis order so iteration is deterministic.
class SparseState {
 public:
  using AmplitudeMap = std::map<std::uint64_t, Complex>;

  SparseState() = default;
  SparseState(int num_qubits, AmplitudeMap amps);

  /// The computational basis state |basis_index> on `num_qubits` qubits.
  static SparseState basis(int num_qubits, std::uint64_t basis_index);
  static SparseState zero(int num_qubits) { return basis(num_qubits, 0); }

  int num_qubits() const { return num_qubits_; }
  const AmplitudeMap& amplitudes() const { return amps_; }

  /// Number of basis states with nonzero amplitude.
  int size() const { return static_cast<int>(amps_.size()); }

  Complex amplitude(std::uint64_t basis_index) const;
  double norm_squared() const;

  /// Drops entries below kPruneEps and renormalizes if the squared norm has
  /// drifted more than kNormDriftEps from one.
  void prune_and_renormalize();

  bool operator==(const SparseState&) const = default;

 private:
  int num_qubits_ = 0;
  AmplitudeMap amps_;
};

/// Split of a state with respect to one qubit:
///   |psi> = lambda0 |0>_q |phi0> + lambda1 |1>_q |phi1>.
/// A branch is absent (phi_k empty, lambda_k = 0) when its weight vanishes.
/// The phase convention puts the phase of each branch's first nonzero
/// amplitude into lambda_k, leaving phi_k with a real positive leading entry.
struct Decomposition {
  Complex lambda0{0.0, 0.0};
  Complex lambda1{0.0, 0.0};
  bool has_branch0 = false;
  bool has_branch1 = false;
  SparseState phi0;  // over the remaining qubits, valid if has_branch0
  SparseState phi1;
};

/// Applies a dense matrix of dimension 2^k to the given local qubit
/// positions. Matrix is row-major, indexed by sub-basis states whose bit t
/// is the value of positions[t].
SparseState apply_matrix(const SparseState& state,
                         const std::vector<Complex>& matrix,
                         const std::vector<int>& positions);

struct GateKind;

/// Applies a gate from the fixed gate set at the given local positions
/// (one position per operand, in operand order).
SparseState apply_gate(const SparseState& state, const GateKind& gate,
                       const std::vector<int>& positions);

/// Dense 2^arity x 2^arity row-major matrix of a gate.
std::vector<Complex> gate_matrix(const GateKind& gate);

Decomposition decompose(const SparseState& state, int local_pos);

/// Inserts a deterministic bit at `local_pos`, shifting higher bits up; the
/// inverse of the bit deletion performed by decompose.
SparseState tensor_insert(const SparseState& phi, int bit_value,
                          int local_pos);

/// Tensor product of two states over disjoint qubit sets, reordered to the
/// ascending order of the union.
SparseState merge_groups(const SparseState& a, const std::vector<int>& a_qubits,
                         const SparseState& b,
                         const std::vector<int>& b_qubits);

}  // namespace dcprop
