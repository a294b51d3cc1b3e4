#pragma once

// Principal branch W0 of the Lambert function on [-1/e, inf).

namespace dcopt {

inline constexpr double kInvE = 0.36787944117144233;  // 1/e
inline constexpr double kE = 2.718281828459045;

/// Absolute slack below -1/e that is still accepted and clamped to the branch
/// point. Rounding in b*exp(-z) at the onset z = ln(-b) + 1 lands here.
inline constexpr double kBranchSlack = 1e-12;

/// Argument of W0, validated against the real principal branch.
class LambertArgument {
 public:
  /// Throws DomainError below -1/e - kBranchSlack or for NaN.
  explicit LambertArgument(double x);

  double value() const noexcept { return x_; }

 private:
  double x_;
};

/// W0(x): the w >= -1 solving w*e^w = x. Halley iteration; the residual
/// |w*e^w - x| stays below 1e-12*max(1, |x|).
double w0(LambertArgument x);
inline double w0(double x) { return w0(LambertArgument(x)); }

struct LogEnclosure {
  double lower;  // ln z - ln ln z
  double upper;  // ln z
};

/// The enclosure ln z - ln ln z < W0(z) < ln z, valid for z > e.
/// Throws DomainError for z <= e.
LogEnclosure w0_log_enclosure(double z);

}  // namespace dcopt
