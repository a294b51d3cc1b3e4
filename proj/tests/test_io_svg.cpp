#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dcopt/csv.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/io.hpp"
#include "dcopt/svg.hpp"

using namespace dcopt;

TEST_CASE("real formatting round-trips") {
  for (double v : {0.1, -1e-300, 1.0 / 3.0, 12345678.9, 5e-324, 1.7976931348623157e308}) {
    CHECK(*csv::parse_real(csv::format_real(v)) == v);
  }
  CHECK(csv::format_real(NAN) == "nan");
  CHECK(std::isinf(*csv::parse_real("-inf")));
  CHECK(!csv::parse_real("1.5x"));
  CHECK(!csv::parse_real(""));
}

TEST_CASE("params json") {
  const DCParams p(2, 1, 1, 0.7);
  const Json j = to_json(p);
  CHECK(j.dump() == R"({"r":2.0,"c":1.0,"d":1.0,"p_d":0.7})");
  CHECK(params_from_json(j) == p);
  CHECK(params_from_json(Json::parse(R"({"r":2,"c":1,"d":1,"p_d":0.7,"a":99})")).a() == doctest::Approx(std::exp(0.5)));
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"r":2,"c":1,"d":1})")), FormatError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"r":"x","c":1,"d":1,"p_d":0.5})")), FormatError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"r":0,"c":1,"d":1,"p_d":0.5})")), ValidationError);
}

TEST_CASE("spec json") {
  SyntheticSpec s;
  s.m = 40;
  s.seed = 9;
  const auto back = synthetic_spec_from_json(to_json(s));
  CHECK(back.m == 40);
  CHECK(back.seed == 9);
  CHECK(back.split_fraction == 0.8);

  const GridSpec g = grid_spec_from_json(Json::parse(R"({"r":{"steps":3},"runs":2})"));
  CHECK(g.r.steps == 3);
  CHECK(g.r.hi == 12.0);
  CHECK(g.runs == 2);
  CHECK(grid_spec_from_json(to_json(g)).r.steps == 3);
  CHECK_THROWS_AS(grid_spec_from_json(Json::parse(R"({"pick_fraction":2})")), ValidationError);
}

TEST_CASE("rate csv columns") {
  const DCParams p(1, 0, 0, std::exp(-1.0));
  const RateCurve curve = sample_rate_curve(p, 2.0, 10.0, 5);
  std::ostringstream out;
  write_rates_csv(curve, out);
  std::istringstream in(out.str());
  const auto table = csv::read_numeric(in);
  CHECK(table.header == std::vector<std::string>{"z", "g_dc", "g_default", "lower", "upper", "z_min"});
  REQUIRE(table.rows.size() == 5);
  CHECK(std::isnan(table.rows[0][3]));  // z = 2 <= e has no bracket
  for (const auto& row : table.rows) {
    CHECK(row[1] < row[2]);
    CHECK(row[5] == 1.0);
    if (!std::isnan(row[3])) {
      CHECK(row[3] <= row[1]);
      CHECK(row[1] <= row[4]);
    }
  }
  std::ostringstream plain;
  write_rate_curve_csv(curve, plain);
  CHECK(plain.str().rfind("z,g_dc,g_default,lower,upper\n", 0) == 0);
}

TEST_CASE("loss curve csv") {
  const DCParams p(1, 0, 0.5, 0.5);
  std::ostringstream out;
  write_loss_curves_csv(p, -4, 5, 451, out);
  std::istringstream in(out.str());
  const auto table = csv::read_numeric(in);
  CHECK(table.header == std::vector<std::string>{"t", "prob", "loss", "derivative", "f"});
  REQUIRE(table.rows.size() == 451);
  bool anchor_seen = false;
  for (const auto& row : table.rows) {
    if (std::abs(row[0] - 0.5) < 1e-12) {
      anchor_seen = true;
      CHECK(row[1] == doctest::Approx(0.5));
    }
  }
  CHECK(anchor_seen);
  for (std::size_t i = 1; i + 1 < table.rows.size(); ++i) {
    const double fd = (table.rows[i + 1][2] - table.rows[i - 1][2]) / (table.rows[i + 1][0] - table.rows[i - 1][0]);
    CHECK(std::abs(fd - table.rows[i][3]) <= 1e-4);
  }
  std::ostringstream sink;
  CHECK_THROWS_AS(write_loss_curves_csv(p, 0, 1, 1, sink), ValidationError);
}

TEST_CASE("svg rendering") {
  Plot empty{"t", "x", "y", {}};
  const std::string svg = render_svg(empty);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
  CHECK(svg == render_svg(empty));

  std::istringstream rates("z,g_dc,g_default,lower,upper,z_min\n3,2.9,3,2.6,3.1,1\n4,3.98,4,3.7,4.2,1\n");
  const Plot plot = plot_from_csv(rates, PlotKind::Rates);
  REQUIRE(plot.series.size() == 4);
  CHECK(plot.series[0].name == "g_dc");
  CHECK(plot.series[3].name == "upper");
  const std::string rendered = render_svg(plot);
  std::size_t polylines = 0;
  for (std::size_t pos = rendered.find("<polyline"); pos != std::string::npos;
       pos = rendered.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 4);

  std::istringstream header_only("t,prob,loss,derivative,f\n");
  CHECK(render_svg(plot_from_csv(header_only, PlotKind::Curves)).find("<polyline") == std::string::npos);

  std::istringstream wrong("a,b\n1,2\n");
  CHECK_THROWS_AS(plot_from_csv(wrong, PlotKind::Trace), FormatError);
  CHECK_THROWS_AS(parse_plot_kind("pie"), ValidationError);

  Plot escaped{"a < b & c", "x", "y", {{"s\"1", {0, 1, NAN, 2}, {0, 1, 1, 2}}}};
  const std::string esc = render_svg(escaped);
  CHECK(esc.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(esc.find("s&quot;1") != std::string::npos);
}
