#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphrank/attributes.hpp"
#include "graphrank/baselines.hpp"
#include "graphrank/classifier.hpp"
#include "graphrank/config.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/metrics.hpp"
#include "graphrank/models.hpp"
#include "graphrank/prioritize.hpp"
#include "graphrank/repair.hpp"

namespace graphrank {

/// Everything downstream of the target model for one seed.
struct PipelineArtifacts {
  Graph graph;
  GcnModel gcn;
  MlpModel mlp;
  PredictionBundle det;
  PredictionBundle mc;
  PredictionBundle mlp_bundle;
  EnhancedAttributeMatrix zf;
  /// Per node, 1 where the deterministic GCN prediction is wrong.
  std::vector<std::uint8_t> failures;
  /// Test split; the pool that is prioritized.
  std::vector<std::size_t> unlabeled;
  FailureSet test_failures;
};

Graph make_graph(const RunConfig& cfg);

/// Z_f from the three prediction bundles and the graph.
EnhancedAttributeMatrix compute_attributes(const Graph& g, const PredictionBundle& det,
                                           const PredictionBundle& mc,
                                           const PredictionBundle& mlp_bundle);

/// Fills the derived fields (failures, unlabeled, test_failures) from graph and det.
void finalize_artifacts(PipelineArtifacts& art);

PipelineArtifacts build_artifacts(const RunConfig& cfg);
PipelineArtifacts build_artifacts(const RunConfig& cfg, Graph g);

/// Z_f column indices used by an ablation variant.
std::vector<std::size_t> variant_columns(AblationVariant variant, const AttributeSchema& schema);
bool variant_is_iterative(AblationVariant variant);

std::unique_ptr<ClassifierTrainer> make_trainer(const RankerConfig& cfg);

/// Names accepted in RunConfig::methods besides external ranking files.
bool is_builtin_method(const std::string& method);

/// Full ranking of the unlabeled pool for a single-ranking method: a baseline,
/// "ideal", or graphrank with a non-iterative variant. Throws UnknownMethod.
Ranking rank_method(const std::string& method, const PipelineArtifacts& art, const RunConfig& cfg);

/// GraphRank with the configured variant at one budget.
SelectionResult select_graphrank(const PipelineArtifacts& art, const RunConfig& cfg,
                                 AblationVariant variant, std::size_t budget);

/// True for "graphrank" with an iterative variant.
bool method_is_iterative(const std::string& method, const RunConfig& cfg);

struct MethodEvaluation {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t total_failures = 0;
  std::vector<std::size_t> budgets;
  std::vector<std::size_t> detected;
  std::vector<double> trc;
  double atrc = 0.0;
};

/// Prefix evaluation of one ranking across the grid.
MethodEvaluation evaluate_ranking(const Ranking& ranking, const FailureSet& failures,
                                  std::span<const std::size_t> grid);

/// One selection per grid budget, in grid order.
MethodEvaluation evaluate_selections(const std::string& method,
                                     std::span<const std::vector<std::size_t>> selections,
                                     const FailureSet& failures, std::span<const std::size_t> grid);

/// In-process evaluation of `method` on one pipeline.
MethodEvaluation evaluate_method(const std::string& method, const PipelineArtifacts& art,
                                 const RunConfig& cfg);

struct EvalReport {
  std::string method;
  std::vector<MethodEvaluation> per_seed;
  double atrc_mean = 0.0;
  double atrc_sd = 0.0;
  /// Seed-averaged TRC at grid step i (budget fraction (i+1)/steps).
  std::vector<double> trc_by_step;
  double wall_clock_seconds = 0.0;
};

EvalReport summarize(std::string method, std::vector<MethodEvaluation> per_seed,
                     double wall_clock_seconds);
nlohmann::json to_json(const EvalReport& report);

struct SignificanceRow {
  std::string baseline;
  StatsResult stats;
  bool significant = false;
  bool large_effect = false;
};

/// GraphRank against each other method over pooled per-(seed, budget) TRCs.
std::vector<SignificanceRow> significance(const EvalReport& graphrank,
                                          std::span<const EvalReport> others);

struct AblationRow {
  AblationVariant variant;
  std::size_t width = 0;
  EvalReport report;
};

/// Every variant on each pipeline.
std::vector<AblationRow> run_ablation(std::span<const PipelineArtifacts> pipelines,
                                      std::span<const RunConfig> configs);

struct RepairRow {
  std::string method;
  std::vector<RepairResult> per_seed;
  double mean_delta_points = 0.0;
};

/// |train| / 5.
std::size_t repair_budget(const Graph& g);

/// Retraining with the top repair_budget(g) test nodes of a method.
RepairResult repair_method(const std::string& method, const PipelineArtifacts& art,
                           const RunConfig& cfg);

/// Pipelines for the master seed followed by each entry of cfg.seeds.
std::vector<RunConfig> seed_configs(const RunConfig& cfg);

}  // namespace graphrank
