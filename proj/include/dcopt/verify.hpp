#pragma once

// Property suites behind the `verify` command. Each returns a JSON report with
// counts and worst-case margins plus an overall pass flag.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcopt/io.hpp"

namespace dcopt {

struct SuiteOutcome {
  std::string name;
  bool passed = false;
  Json report;
};

/// Grid for the Lambert identity: x = -1/e + s with s log-spaced from 1e-9 up
/// to 1e6 + 1/e, so the points cover [-1/e + 1e-9, 1e6].
std::vector<double> lambert_grid(std::size_t points);

/// b grid and 200 log-spaced z values in (e, 50] for the bracket check.
std::vector<double> theorem_b_grid();
std::vector<double> theorem_z_grid(std::size_t points = 200);

SuiteOutcome verify_lambert_suite();
SuiteOutcome verify_theorem_suite();
SuiteOutcome verify_corollary_suite();
/// Analytic gradient against central differences on random (params, theta, data).
SuiteOutcome verify_gradient_suite(std::uint64_t seed, std::size_t trials = 100);

inline constexpr std::string_view kSuiteNames[] = {"lambert", "theorem", "corollary", "gradient", "all"};

/// Runs one named suite, or every suite for "all". ValidationError for an
/// unknown name.
std::vector<SuiteOutcome> run_suites(std::string_view selection, std::uint64_t seed);

}  // namespace dcopt
