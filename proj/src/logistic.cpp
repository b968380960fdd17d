#include "graphrank/logistic.hpp"

#include <cmath>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

LogisticRegression::LogisticRegression(std::vector<double> mean, std::vector<double> scale,
                                       std::vector<double> weights, double bias)
    : mean_(std::move(mean)), scale_(std::move(scale)), weights_(std::move(weights)), bias_(bias) {}

std::vector<double> LogisticRegression::decision_function(const DenseMatrix& rows) const {
  check_width(rows);
  std::vector<double> out(rows.rows(), bias_);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto x = rows.row(r);
    for (std::size_t j = 0; j < x.size(); ++j) out[r] += weights_[j] * (x[j] - mean_[j]) / scale_[j];
  }
  return out;
}

bool LogisticRegression::is_constant() const {
  for (const double w : weights_) {
    if (w != 0.0) return false;
  }
  return true;
}

LogisticRegression train_logistic(const DenseMatrix& rows, std::span<const int> labels,
                                  const LogisticHyper& hyper) {
  require(rows.rows() >= 2, ErrorCode::InsufficientData,
          "need at least 2 rows, got " + std::to_string(rows.rows()));
  require(labels.size() == rows.rows(), ErrorCode::InvalidParameter, "label count != row count");
  require(hyper.epochs >= 0 && hyper.learning_rate > 0.0 && hyper.l2 >= 0.0,
          ErrorCode::InvalidParameter, "invalid logistic hyperparameters");
  const std::size_t n = rows.rows();
  const std::size_t d = rows.cols();
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += rows(r, j);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < d; ++j) scale[j] += (rows(r, j) - mean[j]) * (rows(r, j) - mean[j]);
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 0.0)) s = 1.0;
  }

  std::vector<double> weights(d, 0.0);
  double bias = 0.0;
  std::vector<double> grad(d);
  std::vector<double> z(d);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double margin = bias;
      for (std::size_t j = 0; j < d; ++j) {
        z[j] = (rows(r, j) - mean[j]) / scale[j];
        margin += weights[j] * z[j];
      }
      const double residual = 1.0 / (1.0 + std::exp(-margin)) - labels[r];
      for (std::size_t j = 0; j < d; ++j) grad[j] += residual * z[j];
      grad_bias += residual;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
      weights[j] -= hyper.learning_rate * (grad[j] * inv_n + hyper.l2 * weights[j]);
    }
    bias -= hyper.learning_rate * grad_bias * inv_n;
  }
  return LogisticRegression(std::move(mean), std::move(scale), std::move(weights), bias);
}

std::unique_ptr<Classifier> LogisticTrainer::train(const DenseMatrix& rows,
                                                   std::span<const int> labels,
                                                   std::uint64_t /*seed*/) const {
  return std::make_unique<LogisticRegression>(train_logistic(rows, labels, hyper_));
}

Hyperparameters LogisticTrainer::hyperparameters() const {
  return {{"epochs", hyper_.epochs}, {"learning_rate", hyper_.learning_rate}, {"l2", hyper_.l2}};
}

}  // namespace graphrank
