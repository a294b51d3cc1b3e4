#include <doctest.h>

#include <cmath>
#include <random>

#include "dcopt/errors.hpp"
#include "dcopt/lambert_w.hpp"
#include "oracles.hpp"

using namespace dcopt;

TEST_CASE("w0 anchor values") {
  CHECK(w0(0.0) == 0.0);
  CHECK(w0(kE) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w0(-kInvE) == -1.0);
  // Bisection oracle: -0.111832559158962971...
  CHECK(w0(-0.1) == doctest::Approx(-0.11183255915896297).epsilon(1e-14));
  CHECK(w0(-0.1) == doctest::Approx(oracle::w0(-0.1)).epsilon(1e-14));
}

TEST_CASE("w0 clamps rounding just below the branch point") {
  CHECK(w0(-kInvE - 5e-13) == -1.0);
  CHECK_THROWS_AS(w0(-kInvE - 1e-9), DomainError);
  CHECK_THROWS_AS(w0(-1.0), DomainError);
  CHECK_THROWS_AS(w0(std::nan("")), DomainError);
}

TEST_CASE("w0 agrees with the bisection oracle") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> log_offset(std::log(1e-10), std::log(1e6));
  for (int i = 0; i < 500; ++i) {
    const double x = -kInvE + std::exp(log_offset(gen));
    CAPTURE(x);
    CHECK(w0(x) == doctest::Approx(oracle::w0(x)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("w0 identity, monotonicity and negative ordering on a log grid") {
  double prev = -2.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -kInvE + std::exp(std::log(1e-12) + (std::log(1e6) - std::log(1e-12)) * i / 2000.0);
    const double w = w0(x);
    CAPTURE(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    CHECK(w > prev);
    CHECK(w >= -1.0);
    if (x < 0.0) CHECK(x > w);
    if (x != 0.0) CHECK(std::signbit(w) == std::signbit(x));
    prev = w;
  }
}

TEST_CASE("w0 handles extreme magnitudes") {
  for (double x : {1e-300, -1e-300, 1e100, 1e300}) {
    const double w = w0(x);
    CAPTURE(x);
    CHECK(std::isfinite(w));
    CHECK(std::abs(std::log(std::abs(x)) - (std::log(std::abs(w)) + w)) <= 1e-12 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("log enclosure") {
  const auto e2 = w0_log_enclosure(kE * kE);
  CHECK(e2.lower == doctest::Approx(2.0 - std::log(2.0)));
  CHECK(e2.upper == doctest::Approx(2.0));

  const auto e10 = w0_log_enclosure(10.0);
  CHECK(e10.lower == doctest::Approx(1.46855264774609).epsilon(1e-12));
  CHECK(e10.upper == doctest::Approx(2.3026).epsilon(1e-4));
  // Bisection oracle: W0(10) = 1.745528002740699...
  CHECK(w0(10.0) == doctest::Approx(1.7455280027406994).epsilon(1e-14));
  CHECK(e10.lower < w0(10.0));
  CHECK(w0(10.0) < e10.upper);

  CHECK_THROWS_AS(w0_log_enclosure(kE), DomainError);
  CHECK_THROWS_AS(w0_log_enclosure(1.0), DomainError);

  for (double z = 2.8; z < 1e8; z *= 1.37) {
    const auto enc = w0_log_enclosure(z);
    CHECK(enc.lower > 0.0);
    CHECK(enc.lower < w0(z));
    CHECK(w0(z) < enc.upper);
  }
}
