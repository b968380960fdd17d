#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphrank/classifier.hpp"
#include "graphrank/dense.hpp"

namespace graphrank {

struct GbdtHyper {
  int num_trees = 100;
  int max_depth = 4;
  double shrinkage = 0.1;
  /// L2 penalty on leaf values.
  double lambda = 1.0;
  /// Minimum hessian sum in each child of a split.
  double min_child_weight = 1.0;

  void validate() const;
};

struct TreeNode {
  /// -1 marks a leaf.
  int feature = -1;
  /// Rows with x[feature] < threshold go left.
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  double predict(std::span<const double> x) const;
  /// Edges on the longest root-to-leaf path.
  int depth() const;
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }

  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

/// Second-order gradient-boosted trees on logistic loss.
class BoostedTrees final : public Classifier {
 public:
  BoostedTrees(std::size_t width, double base_margin, double shrinkage,
               std::vector<RegressionTree> trees, GbdtHyper hyper = {},
               std::vector<double> loss_history = {});

  std::size_t width() const override { return width_; }
  std::vector<double> decision_function(const DenseMatrix& rows) const override;
  bool is_constant() const override { return trees_.empty(); }

  double base_margin() const noexcept { return base_margin_; }
  double shrinkage() const noexcept { return shrinkage_; }
  std::span<const RegressionTree> trees() const noexcept { return trees_; }
  const GbdtHyper& hyper() const noexcept { return hyper_; }
  /// Mean training logistic loss before boosting and after each kept tree.
  std::span<const double> loss_history() const noexcept { return loss_history_; }

  bool operator==(const BoostedTrees& other) const;

 private:
  std::size_t width_;
  double base_margin_;
  double shrinkage_;
  std::vector<RegressionTree> trees_;
  GbdtHyper hyper_;
  std::vector<double> loss_history_;
};

/// Exact greedy split search (features ascending, thresholds ascending, strict
/// improvement), leaf value −G/(H+λ). The base margin is the logit of the
/// positive rate clamped to [0.01, 0.99]; single-class data yields no trees.
/// A tree that would raise the training loss has its leaves halved until it
/// does not; if that fails, boosting stops.
BoostedTrees train_boosted_trees(const DenseMatrix& rows, std::span<const int> labels,
                                 const GbdtHyper& hyper);

class GbdtTrainer final : public ClassifierTrainer {
 public:
  explicit GbdtTrainer(GbdtHyper hyper = {}) : hyper_(hyper) { hyper_.validate(); }

  using ClassifierTrainer::train;
  std::unique_ptr<Classifier> train(const DenseMatrix& rows, std::span<const int> labels,
                                    std::uint64_t seed) const override;
  std::string name() const override { return "gbdt"; }
  Hyperparameters hyperparameters() const override;

 private:
  GbdtHyper hyper_;
};

/// Mean logistic loss of margins against 0/1 labels.
double logistic_loss(std::span<const double> margins, std::span<const int> labels);

}  // namespace graphrank
