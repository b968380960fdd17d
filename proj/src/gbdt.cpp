#include "graphrank/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

constexpr double kMinGain = 1e-12;
constexpr double kBaseRateClamp = 0.01;
constexpr int kMaxBacktracks = 30;

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double gain = kMinGain;
};

double split_threshold(double lower, double upper) {
  const double mid = lower + (upper - lower) / 2.0;
  return mid > lower ? mid : upper;
}

class TreeBuilder {
 public:
  TreeBuilder(const DenseMatrix& x, std::span<const double> grad, std::span<const double> hess,
              const GbdtHyper& hyper)
      : x_(x), grad_(grad), hess_(hess), hyper_(hyper) {}

  /// `sorted[f]` lists the node's rows in canonical order of feature f.
  RegressionTree build(std::vector<std::vector<std::size_t>> sorted) {
    nodes_.clear();
    grow(std::move(sorted), 0);
    return RegressionTree(std::move(nodes_));
  }

 private:
  int grow(std::vector<std::vector<std::size_t>> sorted, int depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double g_total = 0.0;
    double h_total = 0.0;
    for (const std::size_t r : sorted.front()) {
      g_total += grad_[r];
      h_total += hess_[r];
    }
    nodes_[static_cast<std::size_t>(index)].value = -g_total / (h_total + hyper_.lambda);
    if (depth >= hyper_.max_depth || sorted.front().size() < 2) return index;

    const SplitCandidate best = find_split(sorted, g_total, h_total);
    if (best.feature < 0) return index;

    const auto f = static_cast<std::size_t>(best.feature);
    std::vector<std::vector<std::size_t>> left(sorted.size());
    std::vector<std::vector<std::size_t>> right(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      for (const std::size_t r : sorted[k]) {
        (x_(r, f) < best.threshold ? left[k] : right[k]).push_back(r);
      }
    }
    sorted.clear();
    const int left_index = grow(std::move(left), depth + 1);
    const int right_index = grow(std::move(right), depth + 1);
    TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left_index;
    node.right = right_index;
    return index;
  }

  SplitCandidate find_split(const std::vector<std::vector<std::size_t>>& sorted, double g_total,
                            double h_total) const {
    SplitCandidate best;
    const double parent = g_total * g_total / (h_total + hyper_.lambda);
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      const auto& order = sorted[f];
      double g_left = 0.0;
      double h_left = 0.0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        g_left += grad_[order[k]];
        h_left += hess_[order[k]];
        const double here = x_(order[k], f);
        const double next = x_(order[k + 1], f);
        if (!(here < next)) continue;
        const double h_right = h_total - h_left;
        if (h_left < hyper_.min_child_weight || h_right < hyper_.min_child_weight) continue;
        const double g_right = g_total - g_left;
        const double gain = 0.5 * (g_left * g_left / (h_left + hyper_.lambda) +
                                   g_right * g_right / (h_right + hyper_.lambda) - parent);
        if (gain > best.gain) {
          best.feature = static_cast<int>(f);
          best.threshold = split_threshold(here, next);
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const DenseMatrix& x_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  const GbdtHyper& hyper_;
  std::vector<TreeNode> nodes_;
};

/// Orders rows by feature value, then by full row content, then label; this
/// makes every summation order independent of the input row order.
std::vector<std::vector<std::size_t>> canonical_orders(const DenseMatrix& x,
                                                       std::span<const int> labels) {
  std::vector<std::size_t> base(x.rows());
  std::iota(base.begin(), base.end(), std::size_t{0});
  auto content_less = [&](std::size_t a, std::size_t b) {
    const auto ra = x.row(a);
    const auto rb = x.row(b);
    if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
    if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
    return labels[a] < labels[b];
  };
  std::sort(base.begin(), base.end(), content_less);
  std::vector<std::vector<std::size_t>> orders(x.cols(), base);
  for (std::size_t f = 0; f < x.cols(); ++f) {
    std::stable_sort(orders[f].begin(), orders[f].end(),
                     [&](std::size_t a, std::size_t b) { return x(a, f) < x(b, f); });
  }
  return orders;
}

}  // namespace

void GbdtHyper::validate() const {
  require(num_trees >= 0, ErrorCode::InvalidParameter, "num_trees must be >= 0");
  require(max_depth >= 0, ErrorCode::InvalidParameter, "max_depth must be >= 0");
  require(shrinkage > 0.0 && shrinkage <= 1.0, ErrorCode::InvalidParameter,
          "shrinkage must lie in (0, 1]");
  require(lambda >= 0.0, ErrorCode::InvalidParameter, "lambda must be >= 0");
  require(min_child_weight >= 0.0, ErrorCode::InvalidParameter, "min_child_weight must be >= 0");
}

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] < node.threshold
                                     ? node.left
                                     : node.right);
  }
  return nodes_[i].value;
}

int RegressionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> depth(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (!nodes_[i].is_leaf()) {
      depth[static_cast<std::size_t>(nodes_[i].left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(nodes_[i].right)] = depth[i] + 1;
    }
  }
  return deepest;
}

BoostedTrees::BoostedTrees(std::size_t width, double base_margin, double shrinkage,
                           std::vector<RegressionTree> trees, GbdtHyper hyper,
                           std::vector<double> loss_history)
    : width_(width),
      base_margin_(base_margin),
      shrinkage_(shrinkage),
      trees_(std::move(trees)),
      hyper_(hyper),
      loss_history_(std::move(loss_history)) {}

std::vector<double> BoostedTrees::decision_function(const DenseMatrix& rows) const {
  check_width(rows);
  std::vector<double> out(rows.rows(), base_margin_);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto x = rows.row(r);
    for (const auto& tree : trees_) out[r] += shrinkage_ * tree.predict(x);
  }
  return out;
}

bool BoostedTrees::operator==(const BoostedTrees& other) const {
  return width_ == other.width_ && base_margin_ == other.base_margin_ &&
         shrinkage_ == other.shrinkage_ && trees_ == other.trees_ &&
         loss_history_ == other.loss_history_;
}

double logistic_loss(std::span<const double> margins, std::span<const int> labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double m = margins[i];
    // log(1 + e^m) - y·m, written to avoid overflow.
    const double softplus = m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
    total += softplus - (labels[i] ? m : 0.0);
  }
  return total / static_cast<double>(margins.size());
}

BoostedTrees train_boosted_trees(const DenseMatrix& rows, std::span<const int> labels,
                                 const GbdtHyper& hyper) {
  hyper.validate();
  require(rows.rows() >= 2, ErrorCode::InsufficientData,
          "need at least 2 rows, got " + std::to_string(rows.rows()));
  require(labels.size() == rows.rows(), ErrorCode::InvalidParameter, "label count != row count");
  const std::size_t n = rows.rows();
  const std::size_t positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const double rate = std::clamp(static_cast<double>(positives) / static_cast<double>(n),
                                 kBaseRateClamp, 1.0 - kBaseRateClamp);
  const double base = std::log(rate / (1.0 - rate));
  std::vector<double> margins(n, base);
  std::vector<double> history{logistic_loss(margins, labels)};
  std::vector<RegressionTree> trees;
  if (positives == 0 || positives == n) {
    return BoostedTrees(rows.cols(), base, hyper.shrinkage, {}, hyper, std::move(history));
  }

  const auto orders = canonical_orders(rows, labels);
  std::vector<double> grad(n);
  std::vector<double> hess(n);
  std::vector<double> step(n);
  std::vector<double> trial(n);
  for (int t = 0; t < hyper.num_trees; ++t) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = 1.0 / (1.0 + std::exp(-margins[r]));
      grad[r] = p - labels[r];
      hess[r] = p * (1.0 - p);
    }
    TreeBuilder builder(rows, grad, hess, hyper);
    RegressionTree tree = builder.build(orders);
    for (std::size_t r = 0; r < n; ++r) step[r] = hyper.shrinkage * tree.predict(rows.row(r));

    double scale = 1.0;
    double loss = 0.0;
    bool accepted = false;
    for (int attempt = 0; attempt <= kMaxBacktracks; ++attempt, scale *= 0.5) {
      for (std::size_t r = 0; r < n; ++r) trial[r] = margins[r] + scale * step[r];
      loss = logistic_loss(trial, labels);
      if (loss <= history.back()) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (scale != 1.0) {
      std::vector<TreeNode> nodes(tree.nodes().begin(), tree.nodes().end());
      for (auto& node : nodes) node.value *= scale;
      tree = RegressionTree(std::move(nodes));
      for (std::size_t r = 0; r < n; ++r) trial[r] = margins[r] + hyper.shrinkage * tree.predict(rows.row(r));
      loss = logistic_loss(trial, labels);
    }
    margins.swap(trial);
    history.push_back(loss);
    trees.push_back(std::move(tree));
  }
  return BoostedTrees(rows.cols(), base, hyper.shrinkage, std::move(trees), hyper,
                      std::move(history));
}

std::unique_ptr<Classifier> GbdtTrainer::train(const DenseMatrix& rows, std::span<const int> labels,
                                               std::uint64_t /*seed*/) const {
  return std::make_unique<BoostedTrees>(train_boosted_trees(rows, labels, hyper_));
}

Hyperparameters GbdtTrainer::hyperparameters() const {
  return {{"num_trees", hyper_.num_trees},
          {"max_depth", hyper_.max_depth},
          {"shrinkage", hyper_.shrinkage},
          {"lambda", hyper_.lambda},
          {"min_child_weight", hyper_.min_child_weight}};
}

}  // namespace graphrank
