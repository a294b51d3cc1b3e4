#include "dcopt/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcopt/errors.hpp"
#include "dcopt/lambert_w.hpp"

namespace dcopt {

namespace {

constexpr double kOnsetMargin = 1e-9;

bool strictly_ascending(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

void record(InequalityStats& stats, VerificationReport& report, const char* name, double margin,
            bool pass, double b, double z) {
  if (stats.checked == 0 || margin < stats.worst_margin) {
    stats.worst_margin = margin;
    stats.worst_b = b;
    stats.worst_z = z;
  }
  ++stats.checked;
  if (pass) {
    ++stats.passed;
  } else {
    ++stats.failed;
    report.failures.push_back({b, z, name, margin});
  }
}

}  // namespace

double rate_onset(double b) {
  if (!(b < 0.0)) throw ValidationError("rate onset requires b < 0");
  return std::log(-b) + 1.0;
}

double dc_rate(const DCParams& params, double z) {
  const double arg = params.b() * std::exp(-z);
  if (arg < -kInvE - kBranchSlack) {
    throw DomainError("dc_rate: z = " + std::to_string(z) + " is below the rate onset z_min = " +
                      std::to_string(rate_onset(params.b())));
  }
  return params.d() + (w0(arg) + z) / params.r();
}

double default_rate(double z) { return z; }

BoundBracket theorem_bracket(double b, double z) {
  if (!(b < 0.0)) throw ValidationError("theorem bracket requires b < 0");
  if (!(z > kE)) throw DomainError("theorem bracket requires z > e, got " + std::to_string(z));
  const double lz = std::log(z);
  BoundBracket br{};
  br.z = z;
  br.lower = b / z + z;
  br.upper = b * (lz - z) / (z * lz) + z;
  br.value = w0(b * std::exp(-z)) + z;
  return br;
}

VerificationReport verify_theorem(std::span<const double> b_grid, std::span<const double> z_grid) {
  for (double b : b_grid) {
    if (!(b < 0.0)) throw ValidationError("verify_theorem: every b must be < 0, got " + std::to_string(b));
  }
  VerificationReport report;
  for (double b : b_grid) {
    const double onset = rate_onset(b) + kOnsetMargin;
    for (double z : z_grid) {
      if (!(z > kE) || z < onset) continue;
      const BoundBracket br = theorem_bracket(b, z);
      ++report.checked;
      record(report.lower_le_value, report, "lower <= value", br.value - br.lower, br.lower <= br.value, b, z);
      record(report.value_le_upper, report, "value <= upper", br.upper - br.value, br.value <= br.upper, b, z);
      const double straddle = std::min(z - br.lower, br.upper - z);
      record(report.straddle, report, "lower < z < upper", straddle, br.lower < z && z < br.upper, b, z);
    }
  }
  return report;
}

ShiftReport corollary_probe(const DCParams& base, double z, std::span<const double> r_values,
                            std::span<const double> d_values) {
  if (base.c() != 0.0) throw ValidationError("corollary_probe: base params must have c = 0");
  if (r_values.size() < 2 || d_values.size() < 2) {
    throw ValidationError("corollary_probe: need at least two r and two d values");
  }
  if (!strictly_ascending(r_values) || !strictly_ascending(d_values)) {
    throw ValidationError("corollary_probe: r and d values must be ascending");
  }
  ShiftReport out;
  out.z = z;
  out.r_values.assign(r_values.begin(), r_values.end());
  out.d_values.assign(d_values.begin(), d_values.end());
  for (double r : r_values) out.g_over_r.push_back(dc_rate(DCParams(r, 0.0, base.d(), base.p_d()), z));
  for (double d : d_values) out.g_over_d.push_back(dc_rate(DCParams(base.r(), 0.0, d, base.p_d()), z));
  out.decreasing_in_r = std::adjacent_find(out.g_over_r.begin(), out.g_over_r.end(),
                                           std::less_equal<>()) == out.g_over_r.end();
  out.increasing_in_d = strictly_ascending(out.g_over_d);
  return out;
}

RateCurve sample_rate_curve(const DCParams& params, double z_lo, double z_hi, std::size_t samples) {
  if (samples < 2) throw ValidationError("rate curve needs at least 2 samples");
  if (!(std::isfinite(z_lo) && std::isfinite(z_hi) && z_lo < z_hi)) {
    throw ValidationError("rate curve needs a finite range with z_lo < z_hi");
  }
  RateCurve curve{{}, {}, params};
  const double onset = rate_onset(params.b());
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = z_lo + (z_hi - z_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    if (z < onset || z <= 0.0) continue;
    const double g = dc_rate(params, z);
    if (!std::isfinite(g)) continue;
    curve.z_values.push_back(z);
    curve.g_values.push_back(g);
  }
  if (curve.z_values.empty()) {
    throw DomainError("rate curve: range [" + std::to_string(z_lo) + ", " + std::to_string(z_hi) +
                      "] lies below the rate onset z_min = " + std::to_string(onset));
  }
  return curve;
}

}  // namespace dcopt
