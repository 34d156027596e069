#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcprop/ir.hpp"

namespace dcprop {

inline constexpr int kMaxEnumeratedProbInstructions = 20;

/// Samples one executable instance of a probabilistic circuit: probabilistic
/// gates are resolved into a lead unitary plus a from-zero preparation
/// rotation, bindings fix their control's value, and guards are re-simplified
/// under the sampled assignment. Deterministic given (circuit, seed).
Circuit instantiate(const Circuit& probabilistic, std::uint64_t seed);

/// Derives the seed for instance `index` in a batch; instances are
/// independent and reproducible individually.
inline std::uint64_t instance_seed(std::uint64_t base_seed,
                                   std::uint64_t index) {
  return base_seed + index;
}

/// All executable instances with their probabilities: one per assignment of
/// branch choices to the probabilistic instructions, zero-probability
/// branches pruned. Refuses circuits with more than
/// kMaxEnumeratedProbInstructions probabilistic instructions.
std::vector<std::pair<Circuit, double>> enumerate_instances(
    const Circuit& probabilistic);

}  // namespace dcprop
