#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dcopt/dc_loss.hpp"
#include "dcopt/errors.hpp"
#include "oracles.hpp"

using namespace dcopt;

namespace {

DCParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> r(0.1, 12), c(0, 12), d(0, 5), p(0.1, 0.9);
  return DCParams(r(gen), c(gen), d(gen), p(gen));
}

}  // namespace

TEST_CASE("derived parameters") {
  const DCParams none(1, 0, 0, 0.5);
  CHECK(none.eps() == 0.0);
  CHECK(none.a() == 1.0);
  CHECK(none.b() == std::log(0.5));

  const DCParams both(2, 1, 1, 0.7);
  CHECK(both.eps() == 0.5);
  CHECK(both.a() == doctest::Approx(std::exp(0.5)));
  CHECK(both.b() == doctest::Approx(std::log(0.7) - 0.5));
}

TEST_CASE("parameter validation names the bound") {
  CHECK_THROWS_WITH_AS(DCParams(0, 0, 0, 0.5), doctest::Contains("r must be > 0"), ValidationError);
  CHECK_THROWS_WITH_AS(DCParams(1, -1, 0, 0.5), doctest::Contains("c must be >= 0"), ValidationError);
  CHECK_THROWS_WITH_AS(DCParams(1, 0, -0.1, 0.5), doctest::Contains("d must be >= 0"), ValidationError);
  CHECK_THROWS_WITH_AS(DCParams(1, 0, 0, 1.0), doctest::Contains("p_d"), ValidationError);
  CHECK_THROWS_AS(DCParams(1, 0, 0, 0.0), ValidationError);
  CHECK_THROWS_AS(DCParams(std::nan(""), 0, 0, 0.5), ValidationError);
}

TEST_CASE("response probability examples") {
  CHECK(response_probability(DCParams(2, 1, 1, 0.7), 1.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(response_probability(DCParams(1, 0, 0, std::exp(-1.0)), 0.0) == doctest::Approx(std::exp(-1.0)));
  // 0.5^(e^-2), evaluated in long double.
  const double expected = static_cast<double>(oracle::gompertz(1, 0, 0, 0.5, 2));
  CHECK(expected == doctest::Approx(0.91045821793955364).epsilon(1e-15));
  CHECK(response_probability(DCParams(1, 0, 0, 0.5), 2.0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("per-sample loss is the negated probability") {
  const DCParams p(2, 1, 1, 0.7);
  CHECK(per_sample_loss(p, 1.0) == doctest::Approx(-0.7));
  CHECK(per_sample_loss(p, 50.0) == doctest::Approx(-p.a()));
  CHECK(per_sample_loss(p, -50.0) == doctest::Approx(0.0));
  CHECK(per_sample_loss(p, 0.0) < 0.0);
}

TEST_CASE("loss derivative examples") {
  CHECK(loss_derivative(DCParams(1, 0, 0, std::exp(-1.0)), 0.0) == doctest::Approx(-std::exp(-1.0)));
  // Central difference of the long double probability: -0.08540759987920032...
  const DCParams half(1, 0, 0, 0.5);
  const long double fd =
      -oracle::central_difference([](long double t) { return oracle::gompertz(1, 0, 0, 0.5, t); }, 2.0L, 1e-6L);
  CHECK(static_cast<double>(fd) == doctest::Approx(-0.085407599879200325).epsilon(1e-9));
  CHECK(loss_derivative(half, 2.0) == doctest::Approx(static_cast<double>(fd)).epsilon(1e-9));
}

TEST_CASE("margin transform examples") {
  const DCParams p(1, 0, 0, std::exp(-1.0));
  CHECK(margin_transform(p, 1.0) == doctest::Approx(1.0 + std::exp(-1.0)));
  const DCParams q(2, 1, 1, 0.7);
  CHECK(margin_transform(q, q.d()) == doctest::Approx(-q.b()));
  CHECK(margin_transform(q, q.d()) > 0.0);
}

TEST_CASE("two-parameter logistic") {
  CHECK(two_pl(1.5, 3.0, 1.5) == 0.5);
  CHECK(two_pl(0.0, 1.0, 0.0) == 0.5);
  CHECK(two_pl(1e3, 1.0, 0.0) == doctest::Approx(1.0));
  for (double w = -6; w <= 6; w += 0.25) CHECK(two_pl(w, 1, 0) == doctest::Approx(1 / (1 + std::exp(-w))));
  CHECK_THROWS_AS(two_pl(0, 0, 0), ValidationError);
}

TEST_CASE("configuration taxonomy") {
  CHECK(classify_config(DCParams(1, 0, 0, 0.5)) == LossConfigKind::NoDC);
  CHECK(classify_config(DCParams(3, 0, 0, 0.5)) == LossConfigKind::GrowingDC);
  CHECK(classify_config(DCParams(1, 2, 0, 0.5)) == LossConfigKind::DecayingDC);
  CHECK(classify_config(DCParams(2, 2, 0, 0.5)) == LossConfigKind::GrowDecayDC);
  CHECK(classify_config(DCParams(1 + 1e-13, 0, 0, 0.5)) == LossConfigKind::NoDC);
  CHECK(classify_config(DCParams(1 + 1e-9, 0, 0, 0.5)) == LossConfigKind::GrowingDC);
  CHECK(to_string(LossConfigKind::GrowDecayDC) == "grow+decay-DC");
}

TEST_CASE("properties over random parameters") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const DCParams p = random_params(gen);
    CAPTURE(p.r());
    CAPTURE(p.c());
    CAPTURE(p.d());
    CAPTURE(p.p_d());
    CHECK(p.b() < 0.0);
    CHECK(p.a() >= 1.0);
    CHECK(std::abs(response_probability(p, p.d()) - p.p_d()) <= 1e-12 * p.p_d());

    // Strictly increasing on a grid around d (in log space, which does not
    // underflow) and bounded by [0, a).
    double prev_log = -std::numeric_limits<double>::infinity();
    double prev = -1.0;
    for (int k = 0; k < 100; ++k) {
      const double t = p.d() - 10 / p.r() + 20 / p.r() * k / 99.0;
      const double log_prob = log_response_probability(p, t);
      const double prob = response_probability(p, t);
      CHECK(log_prob > prev_log);
      CHECK(prob >= prev);
      if (prev >= std::numeric_limits<double>::min()) CHECK(prob > prev);
      CHECK(prob < p.a());
      CHECK(prob == doctest::Approx(std::exp(log_prob)).epsilon(1e-12));
      prev_log = log_prob;
      prev = prob;
    }

    // Derivative against a long double central difference, away from saturation.
    const double t = p.d() + (unit(gen) * 3 - 1) / p.r();
    const double h = 1e-6 / p.r();
    const long double fd = -oracle::central_difference(
        [&](long double s) { return oracle::gompertz(p.r(), p.c(), p.d(), p.p_d(), s); }, t, h);
    CHECK(loss_derivative(p, t) == doctest::Approx(static_cast<double>(fd)).epsilon(1e-6));
    CHECK(loss_derivative(p, t) < 0.0);

    // -ln(-loss') - f(t) is the constant -ln(a * (-b) * r).
    const double shift = -std::log(-loss_derivative(p, t)) - margin_transform(p, t);
    CHECK(shift == doctest::Approx(-std::log(p.a() * -p.b() * p.r())).epsilon(1e-9));
  }
}
