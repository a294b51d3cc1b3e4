#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dcopt {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // non-finite values break the polyline
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Standalone SVG 1.1 document with axes, ticks, a legend and one polyline
/// per series. Output is a pure function of the input.
std::string render_svg(const Plot& plot);

/// Which CSV schema a plot reads.
enum class PlotKind { Curves, Rates, Trace, SweepCurves };

/// Parses "curves", "rates", "trace" or "sweep-curves"; ValidationError otherwise.
PlotKind parse_plot_kind(std::string_view name);

/// Builds a plot from a CSV of the given kind. Throws FormatError if the
/// header lacks a required column.
Plot plot_from_csv(std::istream& in, PlotKind kind);

}  // namespace dcopt
