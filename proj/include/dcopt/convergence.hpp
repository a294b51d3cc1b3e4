#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dcopt/dc_loss.hpp"

namespace dcopt {

/// Rate of the DC loss under the substitution z = ln t:
///
///   g_dc(z) = d + (W0(b e^{-z}) + z) / r
///
/// the inverse of margin_transform. Throws DomainError when b e^{-z} < -1/e,
/// i.e. when z is below rate_onset(b).
double dc_rate(const DCParams& params, double z);

/// Smallest z with a real rate: ln(-b) + 1. Requires b < 0.
double rate_onset(double b);

/// Baseline rate of strictly monotone losses, g(z) = z.
double default_rate(double z);

/// Enclosure of W0(b e^{-z}) + z between b/z + z and b (ln z - z)/(z ln z) + z.
struct BoundBracket {
  double lower;
  double upper;
  double z;
  double value;  // W0(b e^{-z}) + z
};

/// Throws DomainError for z <= e or an argument outside the W0 domain, and
/// ValidationError for b >= 0.
BoundBracket theorem_bracket(double b, double z);

struct InequalityStats {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_margin = 0.0;  // smallest slack rhs - lhs seen
  double worst_b = 0.0;
  double worst_z = 0.0;
};

struct FailingPair {
  double b;
  double z;
  std::string inequality;
  double margin;
};

struct VerificationReport {
  std::size_t checked = 0;
  InequalityStats lower_le_value;  // lower <= value
  InequalityStats value_le_upper;  // value <= upper
  InequalityStats straddle;        // lower < z < upper
  std::vector<FailingPair> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Checks the bracket on every (b, z) with z > e and z >= rate_onset(b) + 1e-9;
/// other pairs are skipped. Throws ValidationError if any b >= 0.
VerificationReport verify_theorem(std::span<const double> b_grid, std::span<const double> z_grid);

struct ShiftReport {
  double z = 0.0;
  std::vector<double> r_values;
  std::vector<double> g_over_r;  // d held at base.d()
  std::vector<double> d_values;
  std::vector<double> g_over_d;  // r held at base.r()
  bool decreasing_in_r = false;
  bool increasing_in_d = false;
};

/// Probes how g_dc(z) moves with r and with d. base must have c == 0 so b does
/// not depend on r; both value lists must be ascending with at least two
/// entries.
ShiftReport corollary_probe(const DCParams& base, double z, std::span<const double> r_values,
                            std::span<const double> d_values);

/// g_dc sampled on a z grid for plotting. Points outside the real domain are
/// dropped, so z_values may be shorter than the requested sample count.
struct RateCurve {
  std::vector<double> z_values;
  std::vector<double> g_values;
  DCParams params;
};

/// samples >= 2 linearly spaced points on [z_lo, z_hi]. Throws DomainError if
/// no point lies in the domain.
RateCurve sample_rate_curve(const DCParams& params, double z_lo, double z_hi, std::size_t samples);

}  // namespace dcopt
