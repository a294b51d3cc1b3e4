#include "dcopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "dcopt/csv.hpp"
#include "dcopt/errors.hpp"

namespace dcopt {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
};

std::vector<double> nice_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string render_svg(const Plot& plot) {
  Range xr, yr;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
    }
  }
  xr.finish();
  yr.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!plot.title.empty()) {
    out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(plot.title) << "</text>\n";
  }

  // Axes box and ticks.
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(xr.lo, xr.hi)) {
    const double x = px(t);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : nice_ticks(yr.lo, yr.hi)) {
    const double y = py(t);
    out << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 16) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

  // Series.
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
            << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt(px(s.x[i])) + ',' + fmt(py(s.y[i]));
    }
    flush();
    const double ly = kTop + 10 + 18 * static_cast<double>(k);
    const double lx = kLeft + pw + 15;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(s.name) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "curves") return PlotKind::Curves;
  if (name == "rates") return PlotKind::Rates;
  if (name == "trace") return PlotKind::Trace;
  if (name == "sweep-curves") return PlotKind::SweepCurves;
  throw ValidationError("unknown plot kind '" + std::string(name) + "'");
}

Plot plot_from_csv(std::istream& in, PlotKind kind) {
  const csv::Table table = csv::read_numeric(in);
  auto need = [&](std::string_view name) {
    const auto idx = table.column(name);
    if (!idx) throw FormatError("line 1: missing column '" + std::string(name) + "'");
    return *idx;
  };
  auto column_series = [&](std::size_t xi, std::string_view name) {
    const std::size_t yi = need(name);
    PlotSeries s{std::string(name), {}, {}};
    for (const auto& row : table.rows) {
      s.x.push_back(row[xi]);
      s.y.push_back(row[yi]);
    }
    return s;
  };

  Plot plot;
  switch (kind) {
    case PlotKind::Curves: {
      plot = {"DC loss shape", "margin t", "value", {}};
      const std::size_t xi = need("t");
      for (auto name : {"prob", "loss", "derivative", "f"}) plot.series.push_back(column_series(xi, name));
      break;
    }
    case PlotKind::Rates: {
      plot = {"Convergence rate", "z", "rate", {}};
      const std::size_t xi = need("z");
      for (auto name : {"g_dc", "g_default", "lower", "upper"}) plot.series.push_back(column_series(xi, name));
      break;
    }
    case PlotKind::Trace: {
      plot = {"Training trace", "epoch", "value", {}};
      const std::size_t xi = need("epoch");
      for (auto name : {"train_loss", "test_accuracy", "theta_norm", "min_normalized_margin"}) {
        plot.series.push_back(column_series(xi, name));
      }
      break;
    }
    case PlotKind::SweepCurves: {
      plot = {"Mean test accuracy", "epoch", "accuracy", {}};
      const std::size_t ci = need("config_id"), ei = need("epoch"), ai = need("mean_accuracy");
      std::map<long long, PlotSeries> by_config;
      for (const auto& row : table.rows) {
        const auto id = static_cast<long long>(row[ci]);
        auto& s = by_config[id];
        if (s.name.empty()) s.name = "config " + std::to_string(id);
        s.x.push_back(row[ei]);
        s.y.push_back(row[ai]);
      }
      for (auto& [id, s] : by_config) plot.series.push_back(std::move(s));
      break;
    }
  }
  return plot;
}

}  // namespace dcopt
