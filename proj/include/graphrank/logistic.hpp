#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphrank/classifier.hpp"

namespace graphrank {

struct LogisticHyper {
  int epochs = 500;
  double learning_rate = 0.5;
  double l2 = 1e-4;
};

/// Full-batch gradient-descent logistic regression on standardized inputs.
class LogisticRegression final : public Classifier {
 public:
  LogisticRegression(std::vector<double> mean, std::vector<double> scale,
                     std::vector<double> weights, double bias);

  std::size_t width() const override { return weights_.size(); }
  std::vector<double> decision_function(const DenseMatrix& rows) const override;
  bool is_constant() const override;

  std::span<const double> weights() const noexcept { return weights_; }
  double bias() const noexcept { return bias_; }

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> weights_;
  double bias_;
};

/// Zero-initialized weights and bias; `epochs = 0` therefore scores every row 0.5.
LogisticRegression train_logistic(const DenseMatrix& rows, std::span<const int> labels,
                                  const LogisticHyper& hyper);

class LogisticTrainer final : public ClassifierTrainer {
 public:
  explicit LogisticTrainer(LogisticHyper hyper = {}) : hyper_(hyper) {}

  using ClassifierTrainer::train;
  std::unique_ptr<Classifier> train(const DenseMatrix& rows, std::span<const int> labels,
                                    std::uint64_t seed) const override;
  std::string name() const override { return "logistic"; }
  Hyperparameters hyperparameters() const override;

 private:
  LogisticHyper hyper_;
};

}  // namespace graphrank
