#pragma once

#include <cstdint>
#include <random>

namespace dcprop {

/// Seeded deterministic randomness. Raw engine outputs are mapped to ranges
/// by hand so that results are identical across standard library
/// implementations (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // rejection sampling over the top of the range keeps it unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcprop
