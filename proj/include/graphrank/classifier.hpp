#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphrank/dense.hpp"

namespace graphrank {

/// Training data for the ranking classifier: attribute rows of labelled nodes
/// and their failure labels (1 = misclassified by the target model).
struct LabeledPool {
  DenseMatrix rows;
  std::vector<int> labels;
  std::vector<std::size_t> ids;

  std::size_t size() const noexcept { return ids.size(); }
  /// Appends the listed rows of `attributes` (indexed by node id).
  void append(const DenseMatrix& attributes, std::span<const std::size_t> new_ids,
              std::span<const int> new_labels);
  /// Throws InvalidParameter on duplicate ids, labels outside {0,1} or size mismatch.
  void validate() const;
};

/// A trained binary failure classifier.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t width() const = 0;
  /// Log-odds of failure per row; ranking uses this directly.
  virtual std::vector<double> decision_function(const DenseMatrix& rows) const = 0;
  /// True when every input receives the same score.
  virtual bool is_constant() const = 0;

  /// Failure probability sigmoid(decision) in (0, 1); throws WidthMismatch.
  std::vector<double> score(const DenseMatrix& rows) const;

 protected:
  void check_width(const DenseMatrix& rows) const;
};

using Hyperparameters = std::vector<std::pair<std::string, double>>;

/// Factory for classifiers sharing the train/score interface.
class ClassifierTrainer {
 public:
  virtual ~ClassifierTrainer() = default;

  /// Throws InsufficientData for fewer than two rows.
  virtual std::unique_ptr<Classifier> train(const DenseMatrix& rows, std::span<const int> labels,
                                            std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
  virtual Hyperparameters hyperparameters() const = 0;

  std::unique_ptr<Classifier> train(const LabeledPool& pool, std::uint64_t seed) const {
    return train(pool.rows, pool.labels, seed);
  }
};

/// Margin clamp used when converting log-odds to probabilities, keeping
/// scores strictly inside (0, 1).
inline constexpr double kMaxScoreMargin = 30.0;

double sigmoid(double margin);

}  // namespace graphrank
