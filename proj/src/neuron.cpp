#include "dcopt/neuron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dcopt/errors.hpp"
#include "dcopt/rng.hpp"

namespace dcopt {

namespace {

void check_dims(const WeightVector& theta, const Dataset& data) {
  if (theta.size() != data.dim()) {
    throw DimensionError("weights have dimension " + std::to_string(theta.size()) + " but data has " +
                         std::to_string(data.dim()));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double margin_at(const WeightVector& theta, const Dataset& data, std::size_t i) {
  return data.label(i) * dot(theta.theta, data.row(i));
}

void accumulate_gradient(const DCParams& params, const WeightVector& theta, const Dataset& data,
                         std::size_t i, std::vector<double>& grad) {
  const double scale = loss_derivative(params, margin_at(theta, data, i)) * data.label(i);
  const auto x = data.row(i);
  for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += scale * x[j];
}

double min_normalized_margin(const WeightVector& theta, const Dataset& data) {
  const double norm = theta.norm();
  if (norm == 0.0 || data.empty()) return 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) lowest = std::min(lowest, margin_at(theta, data, i));
  return lowest / norm;
}

WeightVector initial_weights(std::size_t n, const TrainConfig& cfg) {
  WeightVector theta(n);
  if (cfg.init == InitScheme::GaussianScaled) {
    Rng rng(derive_seed(cfg.seed, 0x1417));
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : theta.theta) v = sd * rng.normal();
  }
  return theta;
}

}  // namespace

double WeightVector::norm() const { return std::sqrt(dot(theta, theta)); }

void TrainConfig::validate(std::size_t train_size) const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("train config: eta must be > 0");
  if (epochs < 1) throw ValidationError("train config: epochs must be >= 1");
  if (mode == TrainMode::SGD) {
    if (batch_size < 1) throw ValidationError("train config: batch_size must be >= 1");
    if (batch_size > train_size) {
      throw ValidationError("train config: batch_size " + std::to_string(batch_size) +
                            " exceeds the training set size " + std::to_string(train_size));
    }
  }
}

std::vector<double> margins(const WeightVector& theta, const Dataset& data) {
  check_dims(theta, data);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = margin_at(theta, data, i);
  return out;
}

double empirical_loss(const DCParams& params, const WeightVector& theta, const Dataset& data) {
  check_dims(theta, data);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) total += per_sample_loss(params, margin_at(theta, data, i));
  return total;
}

std::vector<double> loss_gradient(const DCParams& params, const WeightVector& theta, const Dataset& data) {
  check_dims(theta, data);
  std::vector<double> grad(theta.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) accumulate_gradient(params, theta, data, i, grad);
  return grad;
}

std::vector<double> loss_gradient(const DCParams& params, const WeightVector& theta, const Dataset& data,
                                  std::span<const std::size_t> rows) {
  check_dims(theta, data);
  std::vector<double> grad(theta.size(), 0.0);
  for (std::size_t i : rows) {
    if (i >= data.size()) throw DimensionError("minibatch row index out of range");
    accumulate_gradient(params, theta, data, i, grad);
  }
  return grad;
}

WeightVector gd_step(const WeightVector& theta, std::span<const double> grad, double eta) {
  if (grad.size() != theta.size()) {
    throw DimensionError("gradient has dimension " + std::to_string(grad.size()) + ", weights " +
                         std::to_string(theta.size()));
  }
  if (!(eta > 0.0)) throw ValidationError("gd_step: eta must be > 0");
  WeightVector next = theta;
  for (std::size_t j = 0; j < grad.size(); ++j) next.theta[j] -= eta * grad[j];
  return next;
}

double accuracy(const WeightVector& theta, const Dataset& data) {
  check_dims(theta, data);
  if (data.empty()) throw EmptyDatasetError("accuracy of an empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int predicted = dot(theta.theta, data.row(i)) >= 0.0 ? 1 : -1;
    correct += predicted == data.label(i);
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainResult train(const DCParams& params, const Dataset& train_set, const Dataset& test_set,
                  const TrainConfig& cfg) {
  if (train_set.empty()) throw ValidationError("train: empty training set");
  if (test_set.empty()) throw ValidationError("train: empty test set");
  if (test_set.dim() != train_set.dim()) throw DimensionError("train: train and test dimensions differ");
  cfg.validate(train_set.size());

  TrainResult result;
  result.theta = initial_weights(train_set.dim(), cfg);
  result.trace.reserve(cfg.epochs);

  Rng shuffler(derive_seed(cfg.seed, 0x5eed));
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  auto step = [&](std::span<const std::size_t> rows, std::size_t epoch, std::size_t batch) {
    const auto grad = loss_gradient(params, result.theta, train_set, rows);
    result.theta = gd_step(result.theta, grad, cfg.eta);
    for (double v : result.theta.theta) {
      if (!std::isfinite(v)) {
        throw NumericalError("train: non-finite weight at epoch " + std::to_string(epoch) + ", minibatch " +
                             std::to_string(batch));
      }
    }
  };

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.mode == TrainMode::GD) {
      step(order, epoch, 0);
    } else {
      shuffler.shuffle(std::span(order));
      const std::span<const std::size_t> all(order);
      std::size_t batch = 0;
      for (std::size_t start = 0; start < all.size(); start += cfg.batch_size, ++batch) {
        step(all.subspan(start, std::min(cfg.batch_size, all.size() - start)), epoch, batch);
      }
    }
    result.trace.push_back({epoch, empirical_loss(params, result.theta, train_set),
                            accuracy(result.theta, test_set), result.theta.norm(),
                            min_normalized_margin(result.theta, train_set)});
  }
  return result;
}

}  // namespace dcopt
