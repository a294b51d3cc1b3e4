#include "dcopt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "dcopt/errors.hpp"
#include "dcopt/rng.hpp"

namespace dcopt {

namespace {

void check_axis(const Axis& axis, const char* name) {
  if (axis.steps < 1) throw ValidationError(std::string("grid axis ") + name + ": steps must be >= 1");
  if (!(std::isfinite(axis.lo) && std::isfinite(axis.hi) && axis.lo <= axis.hi)) {
    throw ValidationError(std::string("grid axis ") + name + ": need finite lo <= hi");
  }
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

struct RunOutput {
  RunSummary summary;
  std::vector<EpochTrace> trace;
};

RunOutput execute_run(const DCParams& params, const SyntheticSpec& data_spec, const TrainConfig& train_cfg,
                      std::uint64_t seed, std::size_t run) {
  RunOutput out;
  out.summary.run = run;
  out.summary.seed = seed;
  try {
    SyntheticSpec spec = data_spec;
    spec.seed = derive_seed(seed, 1);
    const auto sets = split(generate(spec), spec.split_fraction, derive_seed(seed, 2));
    TrainConfig cfg = train_cfg;
    cfg.seed = derive_seed(seed, 3);
    auto result = train(params, sets.train, sets.test, cfg);
    out.trace = std::move(result.trace);
    out.summary.final_loss = out.trace.back().train_loss;
    out.summary.final_accuracy = out.trace.back().test_accuracy;
    for (const auto& e : out.trace) {
      if (e.test_accuracy >= kAccuracyThreshold) {
        out.summary.epochs_to_threshold = e.epoch;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.summary.error = e.what();
    out.trace.clear();
  }
  return out;
}

}  // namespace

std::vector<double> Axis::values() const {
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  v.back() = hi;
  return v;
}

void GridSpec::validate() const {
  check_axis(d, "d");
  check_axis(p_d, "p_d");
  check_axis(r, "r");
  check_axis(c, "c");
  if (!(pick_fraction > 0.0 && pick_fraction <= 1.0)) {
    throw ValidationError("grid: pick_fraction must lie in (0, 1]");
  }
  if (runs < 1) throw ValidationError("grid: runs must be >= 1");
}

std::vector<DCParams> build_grid(const GridSpec& spec) {
  spec.validate();
  const auto ds = spec.d.values();
  const auto ps = spec.p_d.values();
  const auto rs = spec.r.values();
  const auto cs = spec.c.values();
  std::vector<DCParams> grid;
  grid.reserve(ds.size() * ps.size() * rs.size() * cs.size());
  for (double d : ds)
    for (double p : ps)
      for (double r : rs)
        for (double c : cs) grid.emplace_back(r, c, d, p);
  return grid;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t count, std::uint64_t seed) {
  if (count > total) throw ValidationError("sample: count exceeds population");
  std::vector<std::size_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<DCParams> sample_grid(std::span<const DCParams> grid, double pick_fraction, std::uint64_t seed) {
  if (!(pick_fraction > 0.0 && pick_fraction <= 1.0)) {
    throw ValidationError("sample_grid: pick_fraction must lie in (0, 1]");
  }
  const double exact = pick_fraction * static_cast<double>(grid.size());
  auto count = static_cast<std::size_t>(std::ceil(exact));
  // fraction*size may land an ulp above an integer; do not round that up.
  if (static_cast<double>(count) - exact > 1.0 - 1e-9) --count;
  count = std::min(count, grid.size());
  std::vector<DCParams> out;
  out.reserve(count);
  for (std::size_t i : sample_indices(grid.size(), count, seed)) out.push_back(grid[i]);
  return out;
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t config_index, std::size_t run) {
  return derive_seed(derive_seed(seed, config_index), run);
}

CurveStats aggregate_curves(std::span<const std::vector<EpochTrace>> traces) {
  CurveStats stats;
  if (traces.empty()) return stats;
  const std::size_t epochs = traces.front().size();
  for (const auto& t : traces) {
    if (t.size() != epochs) throw ValidationError("aggregate_curves: traces differ in length");
  }
  std::vector<double> loss(traces.size()), acc(traces.size());
  for (std::size_t e = 0; e < epochs; ++e) {
    for (std::size_t k = 0; k < traces.size(); ++k) {
      loss[k] = traces[k][e].train_loss;
      acc[k] = traces[k][e].test_accuracy;
    }
    const double ml = mean_of(loss), ma = mean_of(acc);
    stats.mean_loss.push_back(ml);
    stats.std_loss.push_back(sample_std(loss, ml));
    stats.mean_accuracy.push_back(ma);
    stats.std_accuracy.push_back(sample_std(acc, ma));
  }
  return stats;
}

SweepResult run_sweep(std::span<const DCParams> configs, const SyntheticSpec& data_spec,
                      const TrainConfig& train_cfg, std::size_t runs, std::uint64_t seed,
                      const SweepOptions& options) {
  if (runs < 1) throw ValidationError("run_sweep: runs must be >= 1");
  if (configs.empty()) throw ValidationError("run_sweep: no configs");
  data_spec.validate();

  const std::size_t jobs = configs.size() * runs;
  std::vector<RunOutput> outputs(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t ci = job / runs, k = job % runs;
      outputs[job] = execute_run(configs[ci], data_spec, train_cfg, run_seed(seed, ci, k), k);
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(options.threads, 1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  result.per_config.reserve(configs.size());
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    ConfigResult cr{ci, configs[ci], classify_config(configs[ci]), {}, 0, 0.0, 0.0, {}};
    std::vector<std::vector<EpochTrace>> traces;
    std::vector<double> finals;
    for (std::size_t k = 0; k < runs; ++k) {
      auto& out = outputs[ci * runs + k];
      if (out.summary.error) {
        ++cr.excluded;
      } else {
        finals.push_back(out.summary.final_accuracy);
        traces.push_back(std::move(out.trace));
      }
      cr.runs.push_back(std::move(out.summary));
    }
    if (finals.empty()) {
      cr.mean_final_accuracy = std::numeric_limits<double>::quiet_NaN();
      cr.std_final_accuracy = std::numeric_limits<double>::quiet_NaN();
    } else {
      cr.mean_final_accuracy = mean_of(finals);
      cr.std_final_accuracy = sample_std(finals, cr.mean_final_accuracy);
      cr.curves = aggregate_curves(traces);
    }
    result.excluded_runs += cr.excluded;
    result.per_config.push_back(std::move(cr));
  }

  for (const auto& cr : result.per_config) {
    if (cr.kind == LossConfigKind::DecayingDC || std::isnan(cr.mean_final_accuracy)) continue;
    const std::string label(to_string(cr.kind));
    auto it = result.family_best.find(label);
    // Strict > keeps the earliest config on ties.
    if (it == result.family_best.end() || cr.mean_final_accuracy > it->second.mean_final_accuracy) {
      result.family_best[label] = {cr.config_id, cr.mean_final_accuracy};
    }
  }
  return result;
}

std::vector<ComparisonRow> compare_families(const SweepResult& result) {
  std::vector<ComparisonRow> rows;
  const auto base = result.family_best.find("no-DC");
  const double baseline = base == result.family_best.end() ? std::numeric_limits<double>::quiet_NaN()
                                                           : base->second.mean_final_accuracy;
  for (const char* family : {"no-DC", "growing-DC", "grow+decay-DC"}) {
    const auto it = result.family_best.find(family);
    if (it == result.family_best.end()) continue;
    rows.push_back({family, it->second.config_id, it->second.mean_final_accuracy,
                    it->second.mean_final_accuracy - baseline});
  }
  return rows;
}

}  // namespace dcopt
