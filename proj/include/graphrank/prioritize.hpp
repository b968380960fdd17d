#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphrank/attributes.hpp"
#include "graphrank/classifier.hpp"
#include "graphrank/dense.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/models.hpp"

namespace graphrank {

/// Pool of the validation-split nodes with C_L = 1 iff the target model
/// misclassifies them. Train-split nodes are never included.
LabeledPool construct_training_set(const Graph& g, const PredictionBundle& bundle,
                                   const DenseMatrix& attributes);

/// Stands in for the human annotator of selected nodes.
class LabelOracle {
 public:
  virtual ~LabelOracle() = default;
  /// 1 for failure, 0 otherwise; must answer consistently per node.
  virtual std::vector<int> annotate(std::span<const std::size_t> ids) = 0;
};

/// Answers from a precomputed failure vector indexed by node id.
class GroundTruthOracle final : public LabelOracle {
 public:
  explicit GroundTruthOracle(std::vector<std::uint8_t> failures) : failures_(std::move(failures)) {}

  std::vector<int> annotate(std::span<const std::size_t> ids) override;
  std::size_t queries() const noexcept { return queries_; }

 private:
  std::vector<std::uint8_t> failures_;
  std::size_t queries_ = 0;
};

struct SelectionRound {
  std::vector<std::size_t> ids;
  /// Failure probability of each id when it was selected.
  std::vector<double> scores;
};

struct SelectionResult {
  std::size_t budget = 0;
  std::size_t round_budget = 0;
  std::vector<SelectionRound> rounds;

  /// All selected ids in selection order.
  std::vector<std::size_t> selected() const;
  std::vector<double> scores() const;
};

struct PrioritizeOptions {
  std::size_t budget = 0;
  std::size_t round_budget = 0;
  /// Column of the attribute matrix used to order nodes when the classifier is
  /// constant (single-class pool); typically the deterministic entropy.
  std::optional<std::size_t> fallback_column;
  std::uint64_t seed = 0;
};

/// Round budget for `rounds` equal portions of `budget` (the last may be short).
std::size_t round_budget_for(std::size_t budget, std::size_t rounds);

/// Iterative train → score → take top min(b′, remaining) → annotate → grow pool.
/// `attributes` rows are indexed by node id. Score ties go to the lower id.
/// Throws BudgetExceedsPool, InvalidParameter.
SelectionResult prioritize_iterative(const DenseMatrix& attributes, LabeledPool pool,
                                     std::span<const std::size_t> unlabeled, LabelOracle& oracle,
                                     const PrioritizeOptions& options,
                                     const ClassifierTrainer& trainer);

/// One classifier fit and one ranking; the top-`budget` prefix is returned.
SelectionResult prioritize_single(const DenseMatrix& attributes, const LabeledPool& pool,
                                  std::span<const std::size_t> unlabeled,
                                  const PrioritizeOptions& options,
                                  const ClassifierTrainer& trainer);

struct ScoredNode {
  std::size_t id;
  double decision;
  double score;
};

/// Every candidate ordered by descending classifier decision (ties: ascending id),
/// or by the fallback column when the classifier is constant.
std::vector<ScoredNode> rank_candidates(const Classifier& classifier, const DenseMatrix& attributes,
                                        std::span<const std::size_t> candidates,
                                        std::optional<std::size_t> fallback_column);

/// JSON {budget, round_budget, rounds: [{round, selected_ids, scores}], classifier_hyper, seed}.
void save_selection(const SelectionResult& selection, const ClassifierTrainer& trainer,
                    std::uint64_t seed, const std::filesystem::path& path);
SelectionResult load_selection(const std::filesystem::path& path);

}  // namespace graphrank
