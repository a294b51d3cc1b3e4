#include "dcopt/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcopt/errors.hpp"

namespace dcopt {

namespace {

constexpr int kMaxIterations = 50;

// Series of W0 around the branch point in p = sqrt(2(e*x + 1)).
double branch_point_guess(double x) {
  const double p = std::sqrt(std::max(0.0, 2.0 * (kE * x + 1.0)));
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

double initial_guess(double x) {
  if (x <= -0.25) return branch_point_guess(x);
  if (x < 0.25) return x;
  if (x <= kE) return std::log1p(x);
  const double l1 = std::log(x);
  return l1 - std::log(l1);
}

}  // namespace

LambertArgument::LambertArgument(double x) : x_(x) {
  if (std::isnan(x) || x < -kInvE - kBranchSlack) {
    throw DomainError("lambert W0: argument " + std::to_string(x) +
                      " is below the branch point -1/e");
  }
  if (x < -kInvE) x_ = -kInvE;
}

double w0(LambertArgument arg) {
  const double x = arg.value();
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int i = 0; i < kMaxIterations; ++i) {
    // Halley step on w - x*e^{-w}, which stays finite where w*e^w overflows.
    const double ew = std::exp(-w);
    const double f = w - x * ew;
    const double wp1 = w + 1.0;
    if (wp1 <= 0.0) {
      // Only reachable from rounding right at the branch point.
      w = -1.0 + std::numeric_limits<double>::epsilon();
      continue;
    }
    const double step = f / (wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  if (w < -1.0) w = -1.0;
  return w;
}

LogEnclosure w0_log_enclosure(double z) {
  if (!(z > kE)) {
    throw DomainError("log enclosure of W0 requires z > e, got " + std::to_string(z));
  }
  const double lz = std::log(z);
  return {lz - std::log(lz), lz};
}

}  // namespace dcopt
