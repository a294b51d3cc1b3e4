#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace dcopt {

/// Row-major feature matrix with labels in {-1, +1}.
class Dataset {
 public:
  explicit Dataset(std::size_t n_features = 0) : n_(n_features) {}

  /// Throws DimensionError if features.size() != labels.size() * n_features,
  /// ValidationError on a non-finite feature or a label outside {-1, +1}.
  Dataset(std::vector<double> features, std::vector<int> labels, std::size_t n_features);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return n_; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const { return {features_.data() + i * n_, n_}; }
  int label(std::size_t i) const { return labels_[i]; }

  std::span<const double> features() const noexcept { return features_; }
  std::span<const int> labels() const noexcept { return labels_; }

  void push_back(std::span<const double> x, int y);

  /// Rows picked by index, in the order given.
  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t n_;
  std::vector<double> features_;
  std::vector<int> labels_;
};

/// Two isotropic Gaussian blobs mirrored through the origin.
struct SyntheticSpec {
  std::size_t m = 1000;
  std::size_t n = 2;
  double center_distance = 1.5;  // per coordinate
  double noise_sigma = 1.0;
  double split_fraction = 0.8;
  std::uint64_t seed = 0;

  void validate() const;
};

/// ceil(m/2) points around +center*(1,...,1) labeled +1 and floor(m/2) around
/// the mirrored center labeled -1, shuffled with the seeded generator.
Dataset generate(const SyntheticSpec& spec);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

/// train gets ceil(fraction*m) rows of a seeded permutation, test the rest.
/// Requires 0 < fraction < 1 and m >= 2.
TrainTestSplit split(const Dataset& data, double fraction, std::uint64_t seed);

/// CSV with header x1,...,xn,y; values with 17 significant digits.
void write_csv(const Dataset& data, std::ostream& out);
/// Throws FormatError with the 1-based line number on malformed input.
Dataset read_csv(std::istream& in);

void save_csv(const Dataset& data, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);

}  // namespace dcopt
