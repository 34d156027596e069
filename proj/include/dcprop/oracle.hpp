#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "dcprop/ir.hpp"
#include "dcprop/simplify.hpp"

namespace dcprop {

/// Raised when a simulation would exceed an exactness cap (register size,
/// path count, instance count).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One branch-resolved execution: the quantum state over all qubits, the
/// classical bits, the values of resolved probabilistic controls, and the
/// probability of reaching this path.
struct PathState {
  SparseState state;
  std::vector<bool> bits;
  ControlAssignment controls;
  double probability = 1.0;
};

using Ensemble = std::vector<PathState>;

/// Dense density matrix over the full quantum register, row-major,
/// dimension 2^n.
struct DensityMatrix {
  int num_qubits = 0;
  std::vector<Complex> values;

  Complex at(std::uint64_t row, std::uint64_t col) const {
    return values[(row << num_qubits) + col];
  }
};

inline constexpr int kMaxOracleQubits = 12;
inline constexpr int kDefaultMaxPaths = 4096;

/// Deterministic realization of a rotation spec: a Householder reflection
/// composed with a phase fix, applied at the given positions of the full
/// state. Exact on the defining vector: the to-zero direction sends the
/// spec state to |0...0> and the from-zero direction inverts that.
SparseState apply_rotation(const SparseState& state, const RotationSpec& spec);

/// Enumerates every execution path of the circuit with its probability.
/// Handles all three dialects; probabilistic gates split paths and bindings
/// record control values consulted by later guards.
Ensemble simulate(const Circuit& circuit, int max_paths = kDefaultMaxPaths);

DensityMatrix ensemble_density(const Ensemble& ensemble);

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Frobenius distance between the ensemble densities of two circuits, each
/// simulated under its own dialect's semantics.
double equivalence_distance(const Circuit& a, const Circuit& b,
                            int max_paths = kDefaultMaxPaths);

/// Probability-weighted density of a set of circuits (typically the exact
/// instance enumeration of a probabilistic circuit).
DensityMatrix mixture_density(
    const std::vector<std::pair<Circuit, double>>& instances,
    int max_paths = kDefaultMaxPaths);

}  // namespace dcprop
