#include "dcopt/dc_loss.hpp"

#include <cmath>
#include <string>

#include "dcopt/errors.hpp"

namespace dcopt {

namespace {

void require(bool ok, const char* what, double value) {
  if (!ok) throw ValidationError(std::string("DCParams: ") + what + " (got " + std::to_string(value) + ")");
}

}  // namespace

DCParams::DCParams(double r, double c, double d, double p_d) : r_(r), c_(c), d_(d), p_d_(p_d) {
  require(std::isfinite(r) && r > 0.0, "r must be > 0", r);
  require(std::isfinite(c) && c >= 0.0, "c must be >= 0", c);
  require(std::isfinite(d) && d >= 0.0, "d must be >= 0", d);
  require(p_d > 0.0 && p_d < 1.0, "p_d must lie in (0, 1)", p_d);
  eps_ = c_ / r_;
  a_ = std::exp(eps_);
  b_ = std::log(p_d_) - eps_;
}

std::string_view to_string(LossConfigKind kind) noexcept {
  switch (kind) {
    case LossConfigKind::NoDC: return "no-DC";
    case LossConfigKind::GrowingDC: return "growing-DC";
    case LossConfigKind::DecayingDC: return "decaying-DC";
    case LossConfigKind::GrowDecayDC: return "grow+decay-DC";
  }
  return "unknown";
}

// The exponents below fold ln a = eps into a single exp so that large c/r does
// not overflow a before the double exponential decays.

double response_probability(const DCParams& p, double t) {
  const double u = p.r() * (t - p.d());
  return std::exp(p.eps() + p.b() * std::exp(-u));
}

double log_response_probability(const DCParams& p, double t) {
  return p.eps() + p.b() * std::exp(-p.r() * (t - p.d()));
}

double per_sample_loss(const DCParams& p, double t) { return -response_probability(p, t); }

double loss_derivative(const DCParams& p, double t) {
  const double u = p.r() * (t - p.d());
  const double e = std::exp(-u);
  // a*b*r*exp(-(u - b*e^{-u}))
  return p.b() * p.r() * std::exp(p.eps() - u + p.b() * e);
}

double margin_transform(const DCParams& p, double t) {
  const double u = p.r() * (t - p.d());
  return u - p.b() * std::exp(-u);
}

double two_pl(double omega, double r, double d) {
  if (!(r > 0.0)) throw ValidationError("two_pl: r must be > 0");
  return 1.0 / (1.0 + std::exp(-r * (omega - d)));
}

LossConfigKind classify_config(const DCParams& p) noexcept {
  const bool unit_rate = std::abs(p.r() - 1.0) <= kUnitRateTolerance;
  const bool decays = p.c() > 0.0;
  if (unit_rate) return decays ? LossConfigKind::DecayingDC : LossConfigKind::NoDC;
  return decays ? LossConfigKind::GrowDecayDC : LossConfigKind::GrowingDC;
}

}  // namespace dcopt
