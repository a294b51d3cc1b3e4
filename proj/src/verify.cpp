#include "dcopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dcopt/convergence.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/lambert_w.hpp"
#include "dcopt/neuron.hpp"
#include "dcopt/rng.hpp"

namespace dcopt {

namespace {

constexpr double kIdentityTolerance = 1e-12;
constexpr double kGradientTolerance = 1e-6;

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

}  // namespace

std::vector<double> lambert_grid(std::size_t points) {
  const double lo = std::log(1e-9), hi = std::log(1e6 + kInvE);
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    xs[i] = -kInvE + s;
  }
  xs.back() = 1e6;
  return xs;
}

std::vector<double> theorem_b_grid() { return {-20, -10, -5, -2, -1, -0.5, -0.1, -0.01, -0.001}; }

std::vector<double> theorem_z_grid(std::size_t points) {
  // Exclude z = e itself: exponents 1 + k*(ln 50 - 1)/points for k = 1..points.
  const double top = std::log(50.0);
  std::vector<double> zs(points);
  for (std::size_t k = 1; k <= points; ++k) {
    zs[k - 1] = std::exp(1.0 + (top - 1.0) * static_cast<double>(k) / static_cast<double>(points));
  }
  zs.back() = 50.0;
  return zs;
}

SuiteOutcome verify_lambert_suite() {
  const auto xs = lambert_grid(10000);
  double worst_residual = 0.0, worst_x = 0.0;
  std::size_t monotone_violations = 0, ordering_violations = 0, enclosure_checked = 0, enclosure_violations = 0;
  double prev = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double w = w0(x);
    const double residual = std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x));
    if (residual > worst_residual) {
      worst_residual = residual;
      worst_x = x;
    }
    if (!(w > prev)) ++monotone_violations;
    prev = w;
    if (x < 0.0 && !(x > w && w >= -1.0)) ++ordering_violations;
    if (x > kE) {
      ++enclosure_checked;
      const auto enc = w0_log_enclosure(x);
      if (!(enc.lower < w && w < enc.upper)) ++enclosure_violations;
    }
  }
  const double at_e = w0(kE), at_branch = w0(-kInvE);
  const bool anchors = std::abs(at_e - 1.0) <= 1e-6 && std::abs(at_branch + 1.0) <= 1e-6;
  SuiteOutcome out;
  out.name = "lambert";
  out.passed = worst_residual <= kIdentityTolerance && monotone_violations == 0 && ordering_violations == 0 &&
               enclosure_violations == 0 && anchors;
  out.report = Json{{"points", xs.size()},
                    {"max_relative_residual", worst_residual},
                    {"worst_x", worst_x},
                    {"tolerance", kIdentityTolerance},
                    {"monotonicity_violations", monotone_violations},
                    {"negative_ordering_violations", ordering_violations},
                    {"enclosure_checked", enclosure_checked},
                    {"enclosure_violations", enclosure_violations},
                    {"w0_e", at_e},
                    {"w0_branch_point", at_branch},
                    {"passed", out.passed}};
  return out;
}

SuiteOutcome verify_theorem_suite() {
  const auto bs = theorem_b_grid();
  const auto zs = theorem_z_grid();
  const VerificationReport report = verify_theorem(bs, zs);
  SuiteOutcome out{"theorem", report.ok() && report.checked > 0, to_json(report)};
  out.report["passed"] = out.passed;
  return out;
}

SuiteOutcome verify_corollary_suite() {
  const DCParams base(1.0, 0.0, 0.0, std::exp(-1.0));
  const double z = 5.0;
  const std::vector<double> rs{0.5, 1, 2, 4, 8};
  const std::vector<double> ds{0, 1, 2, 5};
  const ShiftReport shift = corollary_probe(base, z, rs, ds);
  bool exact_shift = true;
  Json shifts = Json::array();
  for (std::size_t i = 1; i < ds.size(); ++i) {
    const double delta = shift.g_over_d[i] - shift.g_over_d[0];
    exact_shift = exact_shift && delta == ds[i];
    shifts.push_back({{"d", ds[i]}, {"shift", delta}});
  }
  SuiteOutcome out{"corollary", shift.decreasing_in_r && shift.increasing_in_d && exact_shift, to_json(shift)};
  out.report["d_shifts"] = shifts;
  out.report["exact_d_shift"] = exact_shift;
  out.report["passed"] = out.passed;
  return out;
}

SuiteOutcome verify_gradient_suite(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  double worst = 0.0;
  std::size_t failed = 0;
  Json failures = Json::array();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const DCParams params(uniform_in(rng, 0.1, 3.0), uniform_in(rng, 0.0, 3.0), uniform_in(rng, 0.0, 2.0),
                          uniform_in(rng, 0.1, 0.9));
    Dataset data(2);
    for (int i = 0; i < 10; ++i) {
      const double x[2] = {rng.normal(), rng.normal()};
      data.push_back(x, rng.uniform() < 0.5 ? -1 : 1);
    }
    WeightVector theta(std::vector<double>{rng.normal(), rng.normal()});
    const auto grad = loss_gradient(params, theta, data);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double h = 1e-6 * (1.0 + std::abs(theta.theta[j]));
      WeightVector up = theta, down = theta;
      up.theta[j] += h;
      down.theta[j] -= h;
      const double fd = (empirical_loss(params, up, data) - empirical_loss(params, down, data)) / (2.0 * h);
      const double rel = std::abs(fd - grad[j]) / std::max(std::abs(grad[j]), 1e-300);
      worst = std::max(worst, rel);
      if (rel > kGradientTolerance) {
        ++failed;
        failures.push_back({{"trial", trial}, {"coordinate", j}, {"analytic", grad[j]}, {"finite_difference", fd}});
      }
    }
  }
  SuiteOutcome out;
  out.name = "gradient";
  out.passed = failed == 0;
  out.report = Json{{"trials", trials},   {"coordinates_checked", trials * 2}, {"failed", failed},
                    {"max_relative_error", worst}, {"tolerance", kGradientTolerance}, {"failures", failures},
                    {"passed", out.passed}};
  return out;
}

std::vector<SuiteOutcome> run_suites(std::string_view selection, std::uint64_t seed) {
  if (selection == "lambert") return {verify_lambert_suite()};
  if (selection == "theorem") return {verify_theorem_suite()};
  if (selection == "corollary") return {verify_corollary_suite()};
  if (selection == "gradient") return {verify_gradient_suite(seed)};
  if (selection == "all") {
    return {verify_lambert_suite(), verify_theorem_suite(), verify_corollary_suite(), verify_gradient_suite(seed)};
  }
  throw ValidationError("unknown verification suite '" + std::string(selection) + "'");
}

}  // namespace dcopt
