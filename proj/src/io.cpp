#include "dcopt/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dcopt/csv.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/lambert_w.hpp"

namespace dcopt {

namespace {

using csv::format_real;

// JSON has no NaN; missing aggregates are written as null.
Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json axis_json(const Axis& a) { return Json{{"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}}; }

Axis axis_from(const Json& j, const char* key, Axis fallback) {
  if (!j.contains(key)) return fallback;
  const Json& a = j.at(key);
  if (!a.is_object()) throw FormatError(std::string("grid axis '") + key + "' must be an object");
  return {get_or(a, "lo", fallback.lo), get_or(a, "hi", fallback.hi), get_or(a, "steps", fallback.steps)};
}

Json stats_json(const InequalityStats& s) {
  return Json{{"checked", s.checked},       {"passed", s.passed},   {"failed", s.failed},
              {"worst_margin", s.worst_margin}, {"worst_b", s.worst_b}, {"worst_z", s.worst_z}};
}

void write_rate_rows(const RateCurve& curve, std::ostream& out, bool with_onset) {
  const double onset = rate_onset(curve.params.b());
  for (std::size_t i = 0; i < curve.z_values.size(); ++i) {
    const double z = curve.z_values[i];
    std::string lower, upper;
    if (z > kE) {
      const BoundBracket br = theorem_bracket(curve.params.b(), z);
      lower = format_real(curve.params.d() + br.lower / curve.params.r());
      upper = format_real(curve.params.d() + br.upper / curve.params.r());
    }
    out << format_real(z) << ',' << format_real(curve.g_values[i]) << ',' << format_real(default_rate(z)) << ','
        << lower << ',' << upper;
    if (with_onset) out << ',' << format_real(onset);
    out << '\n';
  }
}

}  // namespace

Json to_json(const DCParams& p) { return Json{{"r", p.r()}, {"c", p.c()}, {"d", p.d()}, {"p_d", p.p_d()}}; }

DCParams params_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("DC params must be a JSON object");
  for (const char* key : {"r", "c", "d", "p_d"}) {
    if (!j.contains(key)) throw FormatError(std::string("DC params: missing field '") + key + "'");
  }
  return DCParams(get_or(j, "r", 0.0), get_or(j, "c", 0.0), get_or(j, "d", 0.0), get_or(j, "p_d", 0.0));
}

Json to_json(const SyntheticSpec& s) {
  return Json{{"m", s.m},
              {"n", s.n},
              {"center_distance", s.center_distance},
              {"noise_sigma", s.noise_sigma},
              {"split_fraction", s.split_fraction},
              {"seed", s.seed}};
}

SyntheticSpec synthetic_spec_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("synthetic spec must be a JSON object");
  SyntheticSpec s;
  s.m = get_or(j, "m", s.m);
  s.n = get_or(j, "n", s.n);
  s.center_distance = get_or(j, "center_distance", s.center_distance);
  s.noise_sigma = get_or(j, "noise_sigma", s.noise_sigma);
  s.split_fraction = get_or(j, "split_fraction", s.split_fraction);
  s.seed = get_or(j, "seed", s.seed);
  s.validate();
  return s;
}

Json to_json(const GridSpec& g) {
  return Json{{"d", axis_json(g.d)},       {"p_d", axis_json(g.p_d)}, {"r", axis_json(g.r)},
              {"c", axis_json(g.c)},       {"pick_fraction", g.pick_fraction},
              {"runs", g.runs},            {"seed", g.seed}};
}

GridSpec grid_spec_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("grid spec must be a JSON object");
  GridSpec g;
  g.d = axis_from(j, "d", g.d);
  g.p_d = axis_from(j, "p_d", g.p_d);
  g.r = axis_from(j, "r", g.r);
  g.c = axis_from(j, "c", g.c);
  g.pick_fraction = get_or(j, "pick_fraction", g.pick_fraction);
  g.runs = get_or(j, "runs", g.runs);
  g.seed = get_or(j, "seed", g.seed);
  g.validate();
  return g;
}

Json to_json(const TrainConfig& c) {
  return Json{{"eta", c.eta},
              {"batch_size", c.batch_size},
              {"epochs", c.epochs},
              {"seed", c.seed},
              {"mode", c.mode == TrainMode::GD ? "gd" : "sgd"},
              {"init", c.init == InitScheme::Zeros ? "zeros" : "gaussian"}};
}

Json to_json(const WeightVector& theta) { return Json{{"theta", theta.theta}, {"norm", theta.norm()}}; }

Json to_json(const VerificationReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"b", f.b}, {"z", f.z}, {"inequality", f.inequality}, {"margin", f.margin}});
  }
  return Json{{"checked", r.checked},
              {"passed", r.ok()},
              {"lower_le_value", stats_json(r.lower_le_value)},
              {"value_le_upper", stats_json(r.value_le_upper)},
              {"lower_lt_z_lt_upper", stats_json(r.straddle)},
              {"failures", failures}};
}

Json to_json(const ShiftReport& r) {
  return Json{{"z", r.z},
              {"r_values", r.r_values},
              {"g_over_r", r.g_over_r},
              {"decreasing_in_r", r.decreasing_in_r},
              {"d_values", r.d_values},
              {"g_over_d", r.g_over_d},
              {"increasing_in_d", r.increasing_in_d}};
}

Json to_json(const SweepResult& result) {
  Json configs = Json::array();
  for (const auto& cr : result.per_config) {
    Json runs = Json::array();
    for (const auto& run : cr.runs) {
      Json rj{{"run", run.run}, {"seed", run.seed}};
      if (run.error) {
        rj["error"] = *run.error;
      } else {
        rj["final_loss"] = real_or_null(run.final_loss);
        rj["final_accuracy"] = run.final_accuracy;
        rj["epochs_to_threshold"] = run.epochs_to_threshold ? Json(*run.epochs_to_threshold) : Json(nullptr);
      }
      runs.push_back(std::move(rj));
    }
    configs.push_back({{"config_id", cr.config_id},
                       {"params", to_json(cr.params)},
                       {"kind", to_string(cr.kind)},
                       {"runs", std::move(runs)},
                       {"excluded", cr.excluded},
                       {"mean_final_accuracy", real_or_null(cr.mean_final_accuracy)},
                       {"std_final_accuracy", real_or_null(cr.std_final_accuracy)}});
  }
  Json best = Json::object();
  for (const auto& [label, fb] : result.family_best) {
    best[label] = {{"config_id", fb.config_id}, {"mean_final_accuracy", fb.mean_final_accuracy}};
  }
  Json comparison = Json::array();
  for (const auto& row : compare_families(result)) {
    comparison.push_back({{"family", row.family},
                          {"config_id", row.config_id},
                          {"mean_final_accuracy", row.mean_final_accuracy},
                          {"delta_vs_no_dc", real_or_null(row.delta_vs_no_dc)}});
  }
  return Json{{"accuracy_threshold", kAccuracyThreshold},
              {"per_config", std::move(configs)},
              {"family_best", std::move(best)},
              {"comparison", std::move(comparison)},
              {"excluded_runs", result.excluded_runs}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_trace_csv(std::span<const EpochTrace> trace, std::ostream& out) {
  out << "epoch,train_loss,test_accuracy,theta_norm,min_normalized_margin\n";
  for (const auto& e : trace) {
    out << e.epoch << ',' << format_real(e.train_loss) << ',' << format_real(e.test_accuracy) << ','
        << format_real(e.theta_norm) << ',' << format_real(e.min_normalized_margin) << '\n';
  }
}

void write_rate_curve_csv(const RateCurve& curve, std::ostream& out) {
  out << "z,g_dc,g_default,lower,upper\n";
  write_rate_rows(curve, out, false);
}

void write_rates_csv(const RateCurve& curve, std::ostream& out) {
  out << "z,g_dc,g_default,lower,upper,z_min\n";
  write_rate_rows(curve, out, true);
}

void write_loss_curves_csv(const DCParams& params, double t_lo, double t_hi, std::size_t samples,
                           std::ostream& out) {
  if (samples < 2) throw ValidationError("loss curves need at least 2 samples");
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo < t_hi)) {
    throw ValidationError("loss curves need a finite range with t_lo < t_hi");
  }
  out << "t,prob,loss,derivative,f\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    out << format_real(t) << ',' << format_real(response_probability(params, t)) << ','
        << format_real(per_sample_loss(params, t)) << ',' << format_real(loss_derivative(params, t)) << ','
        << format_real(margin_transform(params, t)) << '\n';
  }
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "config_id,r,c,d,p_d,kind,run,final_loss,final_accuracy\n";
  for (const auto& cr : result.per_config) {
    for (const auto& run : cr.runs) {
      out << cr.config_id << ',' << format_real(cr.params.r()) << ',' << format_real(cr.params.c()) << ','
          << format_real(cr.params.d()) << ',' << format_real(cr.params.p_d()) << ',' << to_string(cr.kind)
          << ',' << run.run << ',';
      if (!run.error) out << format_real(run.final_loss) << ',' << format_real(run.final_accuracy);
      else out << ',';
      out << '\n';
    }
  }
}

void write_sweep_curves_csv(const SweepResult& result, std::ostream& out) {
  out << "config_id,epoch,mean_loss,std_loss,mean_accuracy,std_accuracy\n";
  for (const auto& cr : result.per_config) {
    const auto& c = cr.curves;
    for (std::size_t e = 0; e < c.mean_loss.size(); ++e) {
      out << cr.config_id << ',' << (e + 1) << ',' << format_real(c.mean_loss[e]) << ','
          << format_real(c.std_loss[e]) << ',' << format_real(c.mean_accuracy[e]) << ','
          << format_real(c.std_accuracy[e]) << '\n';
    }
  }
}

}  // namespace dcopt
