#pragma once

#include <string_view>

namespace dcopt {

/// Parameters of the differential-capability loss
///
///   P(t) = a * exp(b * exp(-r (t - d)))
///
/// with eps = c / r, a = e^eps and b = ln(p_d) - eps. r is the growth rate,
/// c the decay rate, d the difficulty in margin units and p_d the response
/// probability at t = d. Only (r, c, d, p_d) are stored state; the derived
/// values are recomputed on construction.
class DCParams {
 public:
  /// Throws ValidationError naming the violated bound unless
  /// r > 0, c >= 0, d >= 0 and 0 < p_d < 1 (all finite).
  DCParams(double r, double c, double d, double p_d);

  double r() const noexcept { return r_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double p_d() const noexcept { return p_d_; }
  double eps() const noexcept { return eps_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  friend bool operator==(const DCParams& lhs, const DCParams& rhs) noexcept {
    return lhs.r_ == rhs.r_ && lhs.c_ == rhs.c_ && lhs.d_ == rhs.d_ && lhs.p_d_ == rhs.p_d_;
  }

 private:
  double r_, c_, d_, p_d_;
  double eps_, a_, b_;
};

/// The four loss shapes distinguished by whether r differs from 1 and
/// whether c is positive.
enum class LossConfigKind { NoDC, GrowingDC, DecayingDC, GrowDecayDC };

std::string_view to_string(LossConfigKind kind) noexcept;

/// Tolerance used when deciding r == 1.
inline constexpr double kUnitRateTolerance = 1e-12;

double response_probability(const DCParams& params, double t);

/// ln P(t) = eps + b*exp(-r(t - d)). Finite where response_probability
/// underflows to 0, so it resolves the left tail.
double log_response_probability(const DCParams& params, double t);

/// The trained per-sample objective: -response_probability. Minimizing it
/// maximizes the probability of a correct response, and its derivative has
/// the negative sign of the monotone-loss family.
double per_sample_loss(const DCParams& params, double t);

/// d/dt per_sample_loss = a*b*r*exp(-f(t)) < 0.
double loss_derivative(const DCParams& params, double t);

/// f(t) = r(t - d) - b*exp(-r(t - d)).
double margin_transform(const DCParams& params, double t);

/// Two-parameter logistic item response: 1 / (1 + exp(-r (omega - d))).
double two_pl(double omega, double r, double d);

LossConfigKind classify_config(const DCParams& params) noexcept;

}  // namespace dcopt
