#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcprop/ir.hpp"
#include "dcprop/phase1.hpp"

namespace dcprop {

/// Injection rates for the random dynamic-circuit family. Every knob is
/// exposed through the key=value config format so experiments are
/// reproducible from the config file alone.
struct BenchConfig {
  double meas_rate = 0.08;           // per qubit per layer
  double ccop_rate = 0.06;           // per layer
  double reset_after_measure = 0.5;  // reset chance right after a measurement
  double bit_reuse_rate = 0.25;      // measure into an already written bit
  double read_unwritten_rate = 0.05; // guard atom on a never-written bit
  double else_rate = 0.5;            // conditional gets an else branch
  int max_bits = 16;                 // classical register cap

  bool operator==(const BenchConfig&) const = default;
};

/// Parses `key=value` lines ('#' comments allowed). Unknown keys are errors.
BenchConfig parse_bench_config(std::string_view text);
std::string format_bench_config(const BenchConfig& config);

/// Layered random dynamic circuit over the fixed gate set with injected
/// measurements, classically controlled operations (guards drawn uniformly
/// from the three surface patterns over previously written bits), and
/// resets. Deterministic given (width, depth, seed, config).
Circuit generate(int width, int depth, std::uint64_t seed,
                 const BenchConfig& config = {});

struct SweepRow {
  int width = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  int total_ccop = 0;
  int removed_ccop = 0;
  int eliminated_ccop = 0;
  int feedforward_free_ccop = 0;
  int total_measure = 0;
  int removed_measure = 0;
  int total_reset = 0;
  int removed_reset = 0;
};

struct SweepPoint {
  int width = 0;
  int depth = 0;
  int seeds = 0;
  double mean_total_ccop = 0.0;
  double mean_removed_ccop = 0.0;
  /// Pooled over the point's seeds: sum(removed) / sum(total); 0 when the
  /// point produced no classically controlled operations at all.
  double removal_fraction = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;      // one per (width, depth, seed)
  std::vector<SweepPoint> points;  // one per (width, depth)
};

/// Runs generate + Phase I for every (width, depth, seed) combination and
/// aggregates the removal metric per point.
SweepResult sweep(const std::vector<int>& widths,
                  const std::vector<int>& depths, int seeds_per_point,
                  const BenchConfig& config = {},
                  int group_threshold = kDefaultGroupThreshold,
                  int state_size_threshold = kDefaultStateSizeThreshold,
                  std::uint64_t base_seed = 1);

std::string sweep_rows_csv(const SweepResult& result);
std::string sweep_points_csv(const SweepResult& result);

}  // namespace dcprop
