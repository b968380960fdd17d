#include "graphrank/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "graphrank/error.hpp"
#include "graphrank/gbdt.hpp"
#include "graphrank/graph_io.hpp"
#include "graphrank/logistic.hpp"
#include "graphrank/random.hpp"
#include "graphrank/sbm.hpp"

namespace graphrank {

namespace {

constexpr std::uint64_t kRankerSeedStream = 200;
constexpr std::uint64_t kRandomSeedStream = 300;

const std::vector<std::string> kBuiltinMethods = {"random", "entropy", "deepgini", "margin", "dropout",
                                                  "datis",  "nns",     "graphrank", "ideal"};

std::size_t fallback_position(std::span<const std::size_t> cols, const AttributeSchema& schema) {
  const std::size_t entropy_col = schema.columns(ColumnGroup::DetEntropy).front();
  const auto it = std::find(cols.begin(), cols.end(), entropy_col);
  require(it != cols.end(), ErrorCode::SchemaMismatch, "variant is missing the entropy column");
  return static_cast<std::size_t>(it - cols.begin());
}

SelectionResult select_with_variant(const PipelineArtifacts& art, const RunConfig& cfg,
                                    AblationVariant variant, std::size_t budget) {
  const AttributeSchema schema = art.zf.schema();
  const std::vector<std::size_t> cols = variant_columns(variant, schema);
  const DenseMatrix attrs = art.zf.values.select_cols(cols);
  LabeledPool pool = construct_training_set(art.graph, art.det, attrs);
  const auto trainer = make_trainer(cfg.ranker);
  PrioritizeOptions options;
  options.budget = budget;
  options.round_budget = round_budget_for(budget, cfg.ranker.rounds);
  options.fallback_column = fallback_position(cols, schema);
  options.seed = mix_seed(cfg.seed, kRankerSeedStream);
  if (variant_is_iterative(variant)) {
    GroundTruthOracle oracle(art.failures);
    return prioritize_iterative(attrs, std::move(pool), art.unlabeled, oracle, options, *trainer);
  }
  return prioritize_single(attrs, pool, art.unlabeled, options, *trainer);
}

Ranking graphrank_single_ranking(const PipelineArtifacts& art, const RunConfig& cfg,
                                 AblationVariant variant) {
  const AttributeSchema schema = art.zf.schema();
  const std::vector<std::size_t> cols = variant_columns(variant, schema);
  const DenseMatrix attrs = art.zf.values.select_cols(cols);
  const LabeledPool pool = construct_training_set(art.graph, art.det, attrs);
  const auto trainer = make_trainer(cfg.ranker);
  const auto classifier = trainer->train(pool, mix_seed(cfg.seed, kRankerSeedStream));
  const auto ranked =
      rank_candidates(*classifier, attrs, art.unlabeled, fallback_position(cols, schema));
  Ranking out;
  out.method = "graphrank";
  for (const ScoredNode& node : ranked) {
    out.ids.push_back(node.id);
    out.scores.push_back(node.score);
  }
  return out;
}

}  // namespace

Graph make_graph(const RunConfig& cfg) {
  if (cfg.graph.kind == "dir") {
    if (std::filesystem::exists(cfg.graph.dir / "meta.json")) return load_graph_dir(cfg.graph.dir);
    return load_graph(GraphFiles::in_directory(cfg.graph.dir));
  }
  return generate_sbm(cfg.graph.sbm);
}

EnhancedAttributeMatrix compute_attributes(const Graph& g, const PredictionBundle& det,
                                           const PredictionBundle& mc,
                                           const PredictionBundle& mlp_bundle) {
  const AttributeMatrix z1 =
      assemble_z1(deterministic_output_attrs(det), probabilistic_output_attrs(mc),
                  graph_node_attrs(mlp_bundle), degree_attrs(g));
  return enhance(z1, row_norm_adjacency(g));
}

void finalize_artifacts(PipelineArtifacts& art) {
  art.failures = classify_failures(art.det, art.graph);
  art.unlabeled = art.graph.nodes_in(Split::Test);
  art.test_failures = FailureSet(art.unlabeled, art.failures);
}

PipelineArtifacts build_artifacts(const RunConfig& cfg) { return build_artifacts(cfg, make_graph(cfg)); }

PipelineArtifacts build_artifacts(const RunConfig& cfg, Graph g) {
  PipelineArtifacts art;
  art.graph = std::move(g);
  art.gcn = train_gcn(art.graph, cfg.gcn);
  art.mlp = train_mlp(art.graph, cfg.mlp);
  art.det = gcn_forward_deterministic(art.gcn, art.graph);
  art.mc = gcn_mc_dropout(art.gcn, art.graph, cfg.mc_dropout, cfg.mc_seed());
  art.mlp_bundle = mlp_forward(art.mlp, art.graph.features());
  art.zf = compute_attributes(art.graph, art.det, art.mc, art.mlp_bundle);
  finalize_artifacts(art);
  return art;
}

std::vector<std::size_t> variant_columns(AblationVariant variant, const AttributeSchema& schema) {
  using G = ColumnGroup;
  static constexpr G kAw[] = {G::DetProbs, G::DetEntropy, G::DetGini, G::ProbEntropy};
  static constexpr G kAll[] = {G::DetProbs,    G::DetEntropy, G::DetGini,   G::ProbEntropy,
                               G::MlpProbs,    G::MlpEntropy, G::DegreeNorm};
  std::vector<std::size_t> cols;
  if (variant == AblationVariant::AW) {
    cols = schema.columns(kAw);
  } else {
    cols = schema.columns(kAll);
  }
  if (variant == AblationVariant::AW_AG_EN || variant == AblationVariant::Complete) {
    const std::size_t base = schema.width();
    for (std::size_t k = 0; k < base; ++k) cols.push_back(base + k);
  }
  return cols;
}

bool variant_is_iterative(AblationVariant variant) { return variant == AblationVariant::Complete; }

std::unique_ptr<ClassifierTrainer> make_trainer(const RankerConfig& cfg) {
  if (cfg.classifier == "gbdt") return std::make_unique<GbdtTrainer>(cfg.gbdt);
  if (cfg.classifier == "logistic") return std::make_unique<LogisticTrainer>(cfg.logistic);
  throw Error(ErrorCode::ConfigError, "ranker.classifier: unknown classifier '" + cfg.classifier + "'");
}

bool is_builtin_method(const std::string& method) {
  return std::find(kBuiltinMethods.begin(), kBuiltinMethods.end(), method) != kBuiltinMethods.end();
}

bool method_is_iterative(const std::string& method, const RunConfig& cfg) {
  return method == "graphrank" && variant_is_iterative(cfg.ranker.variant);
}

Ranking rank_method(const std::string& method, const PipelineArtifacts& art, const RunConfig& cfg) {
  const auto& pool = art.unlabeled;
  if (method == "random") return rank_random(pool, mix_seed(cfg.seed, kRandomSeedStream));
  if (method == "entropy") return rank_entropy(art.det, pool);
  if (method == "deepgini") return rank_deepgini(art.det, pool);
  if (method == "margin") return rank_margin(art.det, pool);
  if (method == "dropout") return rank_dropout(art.mc, pool);
  if (method == "nns") return rank_nns(art.det, art.graph, pool, cfg.baselines.nns_lambda);
  if (method == "datis") {
    const std::vector<std::size_t> labelled = art.graph.nodes_in(Split::Train);
    std::vector<int> labels;
    labels.reserve(labelled.size());
    for (std::size_t i : labelled) labels.push_back(art.graph.labels()[i]);
    const DenseMatrix representation = cfg.baselines.datis_representation == "embeddings"
                                           ? gcn_hidden_embeddings(art.gcn, art.graph)
                                           : art.graph.features();
    return rank_datis(representation, labelled, labels, art.det, pool, cfg.baselines.datis_k);
  }
  if (method == "ideal") {
    std::vector<double> scores(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) scores[k] = art.failures[pool[k]] ? 1.0 : 0.0;
    return make_ranking(pool, scores, "ideal");
  }
  if (method == "graphrank") {
    require(!variant_is_iterative(cfg.ranker.variant), ErrorCode::UnknownMethod,
            "iterative graphrank has no single ranking; use select_graphrank");
    return graphrank_single_ranking(art, cfg, cfg.ranker.variant);
  }
  throw Error(ErrorCode::UnknownMethod, "unknown method '" + method + "'");
}

SelectionResult select_graphrank(const PipelineArtifacts& art, const RunConfig& cfg,
                                 AblationVariant variant, std::size_t budget) {
  return select_with_variant(art, cfg, variant, budget);
}

MethodEvaluation evaluate_ranking(const Ranking& ranking, const FailureSet& failures,
                                  std::span<const std::size_t> grid) {
  std::vector<std::vector<std::size_t>> prefixes;
  prefixes.reserve(grid.size());
  for (std::size_t b : grid) {
    require(b <= ranking.size(), ErrorCode::BudgetExceedsPool,
            "ranking '" + ranking.method + "' has " + std::to_string(ranking.size()) +
                " ids, budget " + std::to_string(b));
    prefixes.push_back(ranking.top(b));
  }
  return evaluate_selections(ranking.method, prefixes, failures, grid);
}

MethodEvaluation evaluate_selections(const std::string& method,
                                     std::span<const std::vector<std::size_t>> selections,
                                     const FailureSet& failures, std::span<const std::size_t> grid) {
  require(selections.size() == grid.size(), ErrorCode::InvalidParameter,
          "one selection per grid budget required");
  MethodEvaluation out;
  out.method = method;
  out.total_failures = failures.total();
  out.budgets.assign(grid.begin(), grid.end());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.detected.push_back(detected_failures(selections[k], failures));
    out.trc.push_back(trc(selections[k], failures, grid[k]).value());
  }
  out.atrc = atrc(out.trc);
  return out;
}

MethodEvaluation evaluate_method(const std::string& method, const PipelineArtifacts& art,
                                 const RunConfig& cfg) {
  const std::vector<std::size_t> grid = budget_grid(art.test_failures.total(), cfg.grid_steps);
  MethodEvaluation out;
  if (method_is_iterative(method, cfg)) {
    std::vector<std::vector<std::size_t>> selections;
    for (std::size_t b : grid) {
      selections.push_back(select_graphrank(art, cfg, cfg.ranker.variant, b).selected());
    }
    out = evaluate_selections(method, selections, art.test_failures, grid);
  } else {
    out = evaluate_ranking(rank_method(method, art, cfg), art.test_failures, grid);
  }
  out.method = method;
  out.seed = cfg.seed;
  return out;
}

EvalReport summarize(std::string method, std::vector<MethodEvaluation> per_seed,
                     double wall_clock_seconds) {
  require(!per_seed.empty(), ErrorCode::EmptySet, "no evaluations to summarize");
  EvalReport report;
  report.method = std::move(method);
  std::vector<double> atrcs;
  const std::size_t steps = per_seed.front().trc.size();
  report.trc_by_step.assign(steps, 0.0);
  for (const MethodEvaluation& e : per_seed) {
    require(e.trc.size() == steps, ErrorCode::InvalidParameter, "grid sizes differ across seeds");
    atrcs.push_back(e.atrc);
    for (std::size_t i = 0; i < steps; ++i) report.trc_by_step[i] += e.trc[i];
  }
  for (double& v : report.trc_by_step) v /= static_cast<double>(per_seed.size());
  report.atrc_mean = mean(atrcs);
  report.atrc_sd = sample_sd(atrcs);
  report.per_seed = std::move(per_seed);
  report.wall_clock_seconds = wall_clock_seconds;
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const MethodEvaluation& e : report.per_seed) {
    seeds.push_back({{"seed", e.seed},
                     {"total_failures", e.total_failures},
                     {"budgets", e.budgets},
                     {"detected", e.detected},
                     {"trc", e.trc},
                     {"atrc", e.atrc}});
  }
  return {{"method", report.method},
          {"atrc_mean", report.atrc_mean},
          {"atrc_sd", report.atrc_sd},
          {"trc_by_step", report.trc_by_step},
          {"seeds", seeds},
          {"wall_clock_seconds", report.wall_clock_seconds}};
}

std::vector<SignificanceRow> significance(const EvalReport& graphrank,
                                          std::span<const EvalReport> others) {
  std::vector<double> a;
  for (const auto& e : graphrank.per_seed) a.insert(a.end(), e.trc.begin(), e.trc.end());
  std::vector<SignificanceRow> rows;
  for (const EvalReport& other : others) {
    if (other.method == graphrank.method) continue;
    std::vector<double> b;
    for (const auto& e : other.per_seed) b.insert(b.end(), e.trc.begin(), e.trc.end());
    SignificanceRow row;
    row.baseline = other.method;
    row.stats = mann_whitney_u(a, b);
    try {
      row.stats.effect_size = cohens_d(a, b);
    } catch (const Error&) {
      row.stats.effect_size = std::numeric_limits<double>::quiet_NaN();
    }
    row.significant = row.stats.p_value < 0.05;
    row.large_effect = std::isfinite(row.stats.effect_size) && std::abs(row.stats.effect_size) > 0.8;
    rows.push_back(row);
  }
  return rows;
}

std::vector<AblationRow> run_ablation(std::span<const PipelineArtifacts> pipelines,
                                      std::span<const RunConfig> configs) {
  require(pipelines.size() == configs.size() && !pipelines.empty(), ErrorCode::InvalidParameter,
          "one config per pipeline required");
  std::vector<AblationRow> rows;
  for (AblationVariant variant : {AblationVariant::AW, AblationVariant::AW_AG,
                                  AblationVariant::AW_AG_EN, AblationVariant::Complete}) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<MethodEvaluation> per_seed;
    for (std::size_t s = 0; s < pipelines.size(); ++s) {
      RunConfig cfg = configs[s];
      cfg.ranker.variant = variant;
      per_seed.push_back(evaluate_method("graphrank", pipelines[s], cfg));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    AblationRow row{variant, variant_columns(variant, pipelines.front().zf.schema()).size(), {}};
    row.report = summarize(std::string(to_string(variant)), std::move(per_seed), seconds);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t repair_budget(const Graph& g) { return g.nodes_in(Split::Train).size() / 5; }

RepairResult repair_method(const std::string& method, const PipelineArtifacts& art,
                           const RunConfig& cfg) {
  const std::size_t budget = std::min(repair_budget(art.graph), art.unlabeled.size());
  std::vector<std::size_t> selection;
  if (method_is_iterative(method, cfg)) {
    selection = select_graphrank(art, cfg, cfg.ranker.variant, budget).selected();
  } else {
    selection = rank_method(method, art, cfg).top(budget);
  }
  return repair_retrain(art.graph, selection, cfg.gcn);
}

std::vector<RunConfig> seed_configs(const RunConfig& cfg) {
  std::vector<RunConfig> out{cfg};
  for (std::uint64_t s : cfg.seeds) {
    if (s != cfg.seed) out.push_back(cfg.with_seed(s));
  }
  return out;
}

}  // namespace graphrank
