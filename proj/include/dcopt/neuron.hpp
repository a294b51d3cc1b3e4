#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcopt/data.hpp"
#include "dcopt/dc_loss.hpp"

namespace dcopt {

/// Weights of the bias-free linear neuron theta^T x.
struct WeightVector {
  std::vector<double> theta;

  WeightVector() = default;
  explicit WeightVector(std::size_t n) : theta(n, 0.0) {}
  explicit WeightVector(std::vector<double> values) : theta(std::move(values)) {}

  std::size_t size() const noexcept { return theta.size(); }
  double norm() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

enum class TrainMode { GD, SGD };
enum class InitScheme { Zeros, GaussianScaled };

struct TrainConfig {
  double eta = 0.01;
  std::size_t batch_size = 75;
  std::size_t epochs = 1500;
  std::uint64_t seed = 0;
  TrainMode mode = TrainMode::SGD;
  InitScheme init = InitScheme::Zeros;

  /// Throws ValidationError unless eta > 0, epochs >= 1 and
  /// 1 <= batch_size <= train_size (the batch bound applies in SGD mode).
  void validate(std::size_t train_size) const;
};

struct EpochTrace {
  std::size_t epoch;
  double train_loss;
  double test_accuracy;
  double theta_norm;
  double min_normalized_margin;  // over the training set; 0 while theta = 0

  friend bool operator==(const EpochTrace&, const EpochTrace&) = default;
};

struct TrainResult {
  std::vector<EpochTrace> trace;
  WeightVector theta;
};

/// y_i * theta^T x_i for every row.
std::vector<double> margins(const WeightVector& theta, const Dataset& data);

/// Sum of per_sample_loss over the margins, accumulated in index order.
double empirical_loss(const DCParams& params, const WeightVector& theta, const Dataset& data);

/// Sum over rows of loss_derivative(t_i) * y_i * x_i.
std::vector<double> loss_gradient(const DCParams& params, const WeightVector& theta, const Dataset& data);

/// Same sum restricted to the listed rows (a minibatch).
std::vector<double> loss_gradient(const DCParams& params, const WeightVector& theta, const Dataset& data,
                                  std::span<const std::size_t> rows);

/// theta - eta * grad.
WeightVector gd_step(const WeightVector& theta, std::span<const double> grad, double eta);

/// Fraction of rows with sign(theta^T x) == y, where sign(0) = +1.
/// Throws EmptyDatasetError for an empty dataset.
double accuracy(const WeightVector& theta, const Dataset& data);

/// Full-batch GD (one step per epoch) or minibatch SGD with a seeded shuffle
/// each epoch. Minibatch gradients are sums, not means. One trace entry per
/// epoch, recorded after its last step.
///
/// Throws ValidationError for an empty training or test set or a bad config,
/// DimensionError when the sets disagree in dimension, and NumericalError
/// when a weight becomes non-finite.
TrainResult train(const DCParams& params, const Dataset& train_set, const Dataset& test_set,
                  const TrainConfig& cfg);

}  // namespace dcopt
