#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcopt/data.hpp"
#include "dcopt/dc_loss.hpp"
#include "dcopt/neuron.hpp"

namespace dcopt {

/// A closed interval sampled at `steps` evenly spaced points, endpoints included.
struct Axis {
  double lo;
  double hi;
  std::size_t steps;

  std::vector<double> values() const;
};

struct GridSpec {
  Axis d{0.0, 5.0, 11};
  Axis p_d{0.1, 0.9, 9};
  Axis r{0.1, 12.0, 24};
  Axis c{0.0, 12.0, 25};
  double pick_fraction = 0.025;
  std::size_t runs = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Cartesian product, d outermost and c innermost.
std::vector<DCParams> build_grid(const GridSpec& spec);

/// ceil(fraction * grid.size()) distinct configs, kept in grid order.
std::vector<DCParams> sample_grid(std::span<const DCParams> grid, double pick_fraction, std::uint64_t seed);

/// `count` distinct indices of [0, total) in ascending order (partial Fisher-Yates).
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t count, std::uint64_t seed);

/// Seed of run k of config i.
std::uint64_t run_seed(std::uint64_t seed, std::size_t config_index, std::size_t run);

/// Test accuracy that counts as "reached" for epochs_to_threshold.
inline constexpr double kAccuracyThreshold = 0.9;

struct RunSummary {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double final_loss = 0.0;
  double final_accuracy = 0.0;
  std::optional<std::size_t> epochs_to_threshold;  // first epoch with accuracy >= kAccuracyThreshold
  std::optional<std::string> error;                // set for failed runs
};

/// Per-epoch mean and sample standard deviation across runs.
struct CurveStats {
  std::vector<double> mean_loss;
  std::vector<double> std_loss;
  std::vector<double> mean_accuracy;
  std::vector<double> std_accuracy;
};

/// Throws ValidationError on ragged input. A single run has zero spread.
CurveStats aggregate_curves(std::span<const std::vector<EpochTrace>> traces);

struct ConfigResult {
  std::size_t config_id = 0;
  DCParams params;
  LossConfigKind kind = LossConfigKind::NoDC;
  std::vector<RunSummary> runs;
  std::size_t excluded = 0;  // failed runs left out of the aggregates
  double mean_final_accuracy = 0.0;
  double std_final_accuracy = 0.0;
  CurveStats curves;
};

struct FamilyBest {
  std::size_t config_id;
  double mean_final_accuracy;
};

struct SweepResult {
  std::vector<ConfigResult> per_config;
  /// Keyed by family label: "no-DC", "growing-DC", "grow+decay-DC". Decaying-only
  /// configs are recorded in per_config but get no entry here.
  std::map<std::string, FamilyBest> family_best;
  std::size_t excluded_runs = 0;
};

struct SweepOptions {
  std::size_t threads = 1;
};

/// Trains every config `runs` times. Each run generates and splits its own
/// data and shuffles with seeds derived from run_seed, so the result does not
/// depend on the thread count or scheduling. Failed runs are recorded, not
/// thrown.
SweepResult run_sweep(std::span<const DCParams> configs, const SyntheticSpec& data_spec,
                      const TrainConfig& train_cfg, std::size_t runs, std::uint64_t seed,
                      const SweepOptions& options = {});

/// Family bests against the no-DC baseline, as printable rows.
struct ComparisonRow {
  std::string family;
  std::size_t config_id;
  double mean_final_accuracy;
  double delta_vs_no_dc;  // NaN without a no-DC entry
};
std::vector<ComparisonRow> compare_families(const SweepResult& result);

}  // namespace dcopt
