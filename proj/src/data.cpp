#include "dcopt/data.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "dcopt/csv.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/rng.hpp"

namespace dcopt {

namespace {

void check_row(std::span<const double> x, int y) {
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("dataset: non-finite feature value");
  }
  if (y != 1 && y != -1) throw ValidationError("dataset: label must be -1 or +1, got " + std::to_string(y));
}

}  // namespace

Dataset::Dataset(std::vector<double> features, std::vector<int> labels, std::size_t n_features)
    : n_(n_features), features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.size() != labels_.size() * n_) {
    throw DimensionError("dataset: " + std::to_string(features_.size()) + " feature values for " +
                         std::to_string(labels_.size()) + " rows of dimension " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) check_row(row(i), labels_[i]);
}

void Dataset::push_back(std::span<const double> x, int y) {
  if (x.size() != n_) {
    throw DimensionError("dataset: row of dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(n_));
  }
  check_row(x, y);
  features_.insert(features_.end(), x.begin(), x.end());
  labels_.push_back(y);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(n_);
  out.features_.reserve(indices.size() * n_);
  out.labels_.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto x = row(i);
    out.features_.insert(out.features_.end(), x.begin(), x.end());
    out.labels_.push_back(labels_[i]);
  }
  return out;
}

void SyntheticSpec::validate() const {
  if (m == 0) throw ValidationError("synthetic spec: m must be positive");
  if (n == 0) throw ValidationError("synthetic spec: n must be positive");
  if (!(center_distance > 0.0) || !std::isfinite(center_distance)) {
    throw ValidationError("synthetic spec: center_distance must be > 0");
  }
  if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma)) {
    throw ValidationError("synthetic spec: noise_sigma must be > 0");
  }
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ValidationError("synthetic spec: split_fraction must lie in (0, 1)");
  }
}

Dataset generate(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t positives = (spec.m + 1) / 2;
  std::vector<double> features(spec.m * spec.n);
  std::vector<int> labels(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    const int y = i < positives ? 1 : -1;
    labels[i] = y;
    for (std::size_t j = 0; j < spec.n; ++j) {
      features[i * spec.n + j] = y * spec.center_distance + spec.noise_sigma * rng.normal();
    }
  }
  std::vector<std::size_t> order(spec.m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span(order));
  return Dataset(std::move(features), std::move(labels), spec.n).subset(order);
}

TrainTestSplit split(const Dataset& data, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("split: fraction must lie in (0, 1)");
  if (data.size() < 2) throw ValidationError("split: need at least 2 samples");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span(order));
  auto n_train = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(data.size())));
  // fraction*m may land an ulp above an integer; do not round that up.
  const double exact = fraction * static_cast<double>(data.size());
  if (static_cast<double>(n_train) - exact > 1.0 - 1e-9) --n_train;
  const std::span<const std::size_t> all(order);
  return {data.subset(all.first(n_train)), data.subset(all.subspan(n_train))};
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (std::size_t j = 0; j < data.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << csv::format_real(v) << ',';
    out << data.label(i) << '\n';
  }
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("line 1: missing header");
  const auto header = csv::split_fields(line);
  if (header.empty() || header.back() != "y") throw FormatError("line 1: header must end with column y");
  const std::size_t n = header.size() - 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (header[j] != "x" + std::to_string(j + 1)) {
      throw FormatError("line 1: expected column x" + std::to_string(j + 1) + ", got '" +
                        std::string(header[j]) + "'");
    }
  }
  Dataset data(n);
  std::vector<double> x(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split_fields(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != n + 1) throw FormatError(where + "expected " + std::to_string(n + 1) + " fields");
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = csv::parse_real(fields[j]);
      if (!v || !std::isfinite(*v)) throw FormatError(where + "bad feature '" + std::string(fields[j]) + "'");
      x[j] = *v;
    }
    const auto y = csv::parse_real(fields[n]);
    if (!y || (*y != 1.0 && *y != -1.0)) {
      throw FormatError(where + "label must be -1 or +1, got '" + std::string(fields[n]) + "'");
    }
    data.push_back(x, static_cast<int>(*y));
  }
  return data;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(data, out);
  if (!out) throw IoError("write failed: " + path.string());
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace dcopt
