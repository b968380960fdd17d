#include "graphrank/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "graphrank/error.hpp"
#include "graphrank/graph_io.hpp"
#include "graphrank/manifest.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace layout {

std::vector<std::string> graph_files() {
  std::vector<std::string> out;
  for (const char* name : {"edges.tsv", "features.csv", "labels.tsv", "splits.tsv", "meta.json"}) {
    out.push_back(std::string(kGraphDir) + "/" + name);
  }
  return out;
}

std::string ranking(const std::string& method) { return "rankings/" + method + ".csv"; }

std::string selection(const std::string& method, std::size_t budget) {
  return "selections/" + method + "_b" + std::to_string(budget) + ".json";
}

}  // namespace layout

namespace {

using text::format_double;

std::string stage_hash(const RunConfig& cfg, std::string_view stage) {
  return json_hash(stage_inputs(cfg, stage));
}

void require_stages(const RunManifest& m, const RunConfig& cfg,
                    std::initializer_list<std::string_view> stages) {
  for (std::string_view s : stages) m.require_fresh(std::string(s), stage_hash(cfg, s));
}

std::vector<std::string> model_outputs() {
  return {layout::kGcnCheckpoint, layout::kMlpCheckpoint, layout::kPredsDet, layout::kPredsMc,
          layout::kPredsMlp};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Files every downstream stage consumes.
std::vector<std::string> pipeline_files() {
  auto files = concat(layout::graph_files(), model_outputs());
  files.push_back(layout::kAttributes);
  return files;
}

bool cache_hit(const RunManifest& m, const StageOptions& opt, const std::string& stage,
               const std::string& hash, const FileHashes& inputs, std::ostream& log) {
  if (opt.force || !m.is_cached(stage, hash, inputs)) return false;
  log << stage << ": up to date (use --force to rerun)\n";
  return true;
}

void finish_stage(RunManifest& m, const std::string& stage, const std::string& hash,
                  FileHashes inputs, const std::vector<std::string>& outputs) {
  StageRecord rec;
  rec.config_hash = hash;
  rec.inputs = std::move(inputs);
  rec.outputs = m.hash_files(outputs);
  m.record(stage, std::move(rec));
  m.save();
}

std::string percent(double fraction) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << 100.0 * fraction;
  return s.str();
}

/// Loaded persisted pipeline followed by in-memory pipelines for the extra seeds.
struct SeedPipelines {
  std::vector<RunConfig> configs;
  std::vector<PipelineArtifacts> artifacts;
};

SeedPipelines all_pipelines(const RunConfig& cfg, std::ostream& log) {
  SeedPipelines out;
  out.configs = seed_configs(cfg);
  out.artifacts.push_back(load_persisted(cfg.output_dir));
  for (std::size_t s = 1; s < out.configs.size(); ++s) {
    log << "building pipeline for seed " << out.configs[s].seed << "\n";
    out.artifacts.push_back(build_artifacts(out.configs[s]));
  }
  return out;
}

/// Evaluation of the persisted primary run from its ranking/selection files.
MethodEvaluation evaluate_persisted(const std::string& method, const PipelineArtifacts& art,
                                    const RunConfig& cfg, const RunManifest& m,
                                    FileHashes& consumed) {
  const std::vector<std::size_t> grid = budget_grid(art.test_failures.total(), cfg.grid_steps);
  const std::string hash = stage_hash(cfg, "prioritize");
  MethodEvaluation out;
  if (method == "ideal") {
    out = evaluate_ranking(rank_method(method, art, cfg), art.test_failures, grid);
  } else if (method_is_iterative(method, cfg)) {
    std::vector<std::vector<std::size_t>> selections;
    for (std::size_t b : grid) {
      const std::string rel = layout::selection(method, b);
      require(m.find("prioritize/" + rel) != nullptr, ErrorCode::MissingArtifacts,
              "no selection for " + method + " at budget " + std::to_string(b) +
                  "; run `prioritize --method " + method + "`");
      m.require_fresh("prioritize/" + rel, hash);
      const SelectionResult sel = load_selection(cfg.output_dir / rel);
      require(sel.budget == b, ErrorCode::StaleArtifacts, rel + " has the wrong budget");
      selections.push_back(sel.selected());
      consumed.merge(m.hash_files({rel}));
    }
    out = evaluate_selections(method, selections, art.test_failures, grid);
  } else {
    const std::string rel = layout::ranking(method);
    require(m.find("prioritize/" + rel) != nullptr, ErrorCode::MissingArtifacts,
            "no ranking for " + method + "; run `prioritize --method " + method + "`");
    m.require_fresh("prioritize/" + rel,
                    is_builtin_method(method) ? hash : m.find("prioritize/" + rel)->config_hash);
    Ranking ranking = load_ranking(cfg.output_dir / rel);
    ranking.method = method;
    consumed.merge(m.hash_files({rel}));
    out = evaluate_ranking(ranking, art.test_failures, grid);
  }
  out.method = method;
  out.seed = cfg.seed;
  return out;
}

std::vector<double> by_node(const Ranking& r, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) out[r.ids[k]] = r.scores[k];
  return out;
}

std::string dist_csv(const PipelineArtifacts& art, const RunConfig& cfg) {
  const std::size_t n = art.graph.num_nodes();
  const auto& pool = art.unlabeled;
  RunConfig single = cfg;
  single.ranker.variant = AblationVariant::AW_AG_EN;
  const std::vector<double> nfr = neighbor_failure_rate(art.graph, art.failures);
  const std::vector<std::pair<std::string, std::vector<double>>> metrics = {
      {"entropy", by_node(rank_entropy(art.det, pool), n)},
      {"deepgini", by_node(rank_deepgini(art.det, pool), n)},
      {"margin", by_node(rank_margin(art.det, pool), n)},
      {"dropout", by_node(rank_dropout(art.mc, pool), n)},
      {"graphrank_score", by_node(rank_method("graphrank", art, single), n)},
      {"neighbor_failure_rate", nfr},
  };
  std::vector<std::uint8_t> is_failure;
  for (std::size_t i : pool) is_failure.push_back(art.failures[i]);
  std::string out = "metric,bin_lo,bin_hi,failure_prop,correct_prop\n";
  for (const auto& [name, values] : metrics) {
    std::vector<double> metric;
    for (std::size_t i : pool) metric.push_back(values[i]);
    const HistogramPair h = attribute_distributions(metric, is_failure, cfg.histogram_bins);
    for (std::size_t b = 0; b < h.bin_lo.size(); ++b) {
      out += name + "," + format_double(h.bin_lo[b]) + "," + format_double(h.bin_hi[b]) + "," +
             format_double(h.failure_prop[b]) + "," + format_double(h.correct_prop[b]) + "\n";
    }
  }
  return out;
}

nlohmann::json graph_summary(const PipelineArtifacts& art) {
  const Graph& g = art.graph;
  return {{"nodes", g.num_nodes()},
          {"edges", g.num_edges()},
          {"classes", g.num_classes()},
          {"edge_homophily", edge_homophily(g)},
          {"accuracy",
           {{"train", accuracy(art.det, g, g.nodes_in(Split::Train))},
            {"val", accuracy(art.det, g, g.nodes_in(Split::Validation))},
            {"test", accuracy(art.det, g, g.nodes_in(Split::Test))}}},
          {"total_failures", art.test_failures.total()}};
}

}  // namespace

PipelineArtifacts load_persisted(const std::filesystem::path& out_dir) {
  PipelineArtifacts art;
  art.graph = load_graph_dir(out_dir / layout::kGraphDir);
  art.gcn = load_gcn_checkpoint(out_dir / layout::kGcnCheckpoint);
  art.mlp = load_mlp_checkpoint(out_dir / layout::kMlpCheckpoint);
  art.det = load_predictions(out_dir / layout::kPredsDet);
  art.mc = load_predictions(out_dir / layout::kPredsMc);
  art.mlp_bundle = load_predictions(out_dir / layout::kPredsMlp);
  art.zf = load_attributes(out_dir / layout::kAttributes);
  require(art.det.num_nodes() == art.graph.num_nodes() && art.zf.values.rows() == art.graph.num_nodes(),
          ErrorCode::StaleArtifacts, "persisted artifacts disagree on the node count");
  finalize_artifacts(art);
  return art;
}

void cmd_gen(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  const std::string hash = stage_hash(cfg, "gen");
  FileHashes inputs;
  if (cfg.graph.kind == "dir") {
    const auto files = GraphFiles::in_directory(cfg.graph.dir);
    for (const auto& p : {files.edges, files.features, files.labels, files.splits}) {
      require(std::filesystem::exists(p), ErrorCode::Io, p.string() + " not found");
      inputs[std::filesystem::absolute(p).string()] = sha256_file(p);
    }
  }
  if (cache_hit(m, opt, "gen", hash, inputs, log)) return;
  const Graph g = make_graph(cfg);
  save_graph(g, cfg.output_dir / layout::kGraphDir);
  finish_stage(m, "gen", hash, std::move(inputs), layout::graph_files());
  log << "gen: " << g.num_nodes() << " nodes, " << g.num_edges() << " edges, " << g.num_classes()
      << " classes, edge homophily " << format_double(edge_homophily(g)) << "\n";
}

void cmd_train(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen"});
  const std::string hash = stage_hash(cfg, "train");
  const FileHashes inputs = m.hash_files(layout::graph_files());
  if (cache_hit(m, opt, "train", hash, inputs, log)) return;

  const Graph g = load_graph_dir(cfg.output_dir / layout::kGraphDir);
  const GcnModel gcn = train_gcn(g, cfg.gcn);
  const MlpModel mlp = train_mlp(g, cfg.mlp);
  const PredictionBundle det = gcn_forward_deterministic(gcn, g);
  const PredictionBundle mc = gcn_mc_dropout(gcn, g, cfg.mc_dropout, cfg.mc_seed());
  const PredictionBundle mlp_bundle = mlp_forward(mlp, g.features());
  save_checkpoint(gcn, cfg.output_dir / layout::kGcnCheckpoint);
  save_checkpoint(mlp, cfg.output_dir / layout::kMlpCheckpoint);
  save_predictions(det, cfg.output_dir / layout::kPredsDet);
  save_predictions(mc, cfg.output_dir / layout::kPredsMc);
  save_predictions(mlp_bundle, cfg.output_dir / layout::kPredsMlp);
  finish_stage(m, "train", hash, inputs, model_outputs());
  log << "train: gcn accuracy train=" << percent(accuracy(det, g, g.nodes_in(Split::Train)))
      << "% val=" << percent(accuracy(det, g, g.nodes_in(Split::Validation)))
      << "% test=" << percent(accuracy(det, g, g.nodes_in(Split::Test)))
      << "%; mlp test=" << percent(accuracy(mlp_bundle, g, g.nodes_in(Split::Test))) << "%\n";
}

void cmd_attrs(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen", "train"});
  const std::string hash = stage_hash(cfg, "attrs");
  const FileHashes inputs = m.hash_files(concat(layout::graph_files(), model_outputs()));
  if (cache_hit(m, opt, "attrs", hash, inputs, log)) return;

  const Graph g = load_graph_dir(cfg.output_dir / layout::kGraphDir);
  const EnhancedAttributeMatrix zf =
      compute_attributes(g, load_predictions(cfg.output_dir / layout::kPredsDet),
                         load_predictions(cfg.output_dir / layout::kPredsMc),
                         load_predictions(cfg.output_dir / layout::kPredsMlp));
  save_attributes(zf, cfg.output_dir / layout::kAttributes);
  finish_stage(m, "attrs", hash, inputs, {layout::kAttributes});
  log << "attrs: " << zf.values.rows() << " x " << zf.values.cols() << " attribute matrix\n";
}

void cmd_prioritize(const StageOptions& opt, const PrioritizeRequest& req, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen", "train", "attrs"});
  const std::string hash = stage_hash(cfg, "prioritize");
  FileHashes inputs = m.hash_files(pipeline_files());
  const PipelineArtifacts art = load_persisted(cfg.output_dir);

  if (req.method == "external") {
    require(!req.file.empty(), ErrorCode::ConfigError, "--file: required for method 'external'");
    require(std::filesystem::exists(req.file), ErrorCode::Io, req.file.string() + " not found");
    const Ranking ranking = load_ranking(req.file);
    require(!is_builtin_method(ranking.method) && ranking.method != "external",
            ErrorCode::InvalidParameter,
            "external ranking file name '" + ranking.method + "' collides with a built-in method");
    for (std::size_t id : ranking.ids) {
      require(id < art.graph.num_nodes() && art.graph.splits()[id] == Split::Test,
              ErrorCode::InvalidParameter,
              "external ranking lists node " + std::to_string(id) + " outside the test split");
    }
    const std::string rel = layout::ranking(ranking.method);
    inputs[std::filesystem::absolute(req.file).string()] = sha256_file(req.file);
    save_ranking(ranking, cfg.output_dir / rel);
    finish_stage(m, "prioritize/" + rel, hash, inputs, {rel});
    log << "prioritize: external ranking '" << ranking.method << "' with " << ranking.size()
        << " nodes\n";
    return;
  }
  require(is_builtin_method(req.method), ErrorCode::UnknownMethod,
          "unknown method '" + req.method + "'");
  if (req.budget) {
    require(*req.budget >= 1 && *req.budget <= art.unlabeled.size(), ErrorCode::BudgetExceedsPool,
            "budget " + std::to_string(*req.budget) + " outside [1, " +
                std::to_string(art.unlabeled.size()) + "]");
  }

  if (method_is_iterative(req.method, cfg)) {
    std::vector<std::size_t> budgets;
    if (req.budget) {
      budgets.push_back(*req.budget);
    } else {
      budgets = budget_grid(art.test_failures.total(), cfg.grid_steps);
    }
    const auto trainer = make_trainer(cfg.ranker);
    for (std::size_t b : budgets) {
      const std::string rel = layout::selection(req.method, b);
      const std::string stage = "prioritize/" + rel;
      if (cache_hit(m, opt, stage, hash, inputs, log)) continue;
      const SelectionResult sel = select_graphrank(art, cfg, cfg.ranker.variant, b);
      save_selection(sel, *trainer, cfg.seed, cfg.output_dir / rel);
      finish_stage(m, stage, hash, inputs, {rel});
      log << "prioritize: graphrank b=" << b << " b'=" << sel.round_budget << ", "
          << sel.rounds.size() << " rounds\n";
      for (std::size_t r = 0; r < sel.rounds.size(); ++r) {
        log << "  round " << r + 1 << ": " << sel.rounds[r].ids.size() << " selected\n";
      }
    }
    return;
  }

  const std::string rel = layout::ranking(req.method);
  const std::string stage = "prioritize/" + rel;
  if (cache_hit(m, opt, stage, hash, inputs, log)) return;
  const Ranking ranking = rank_method(req.method, art, cfg);
  save_ranking(ranking, cfg.output_dir / rel);
  finish_stage(m, stage, hash, inputs, {rel});
  log << "prioritize: " << req.method << " ranking of " << ranking.size() << " nodes\n";
}

void cmd_evaluate(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen", "train", "attrs"});
  const std::string hash = stage_hash(cfg, "evaluate");

  std::vector<std::string> methods = cfg.methods;
  if (std::find(methods.begin(), methods.end(), "ideal") == methods.end()) methods.push_back("ideal");

  // Check persisted inputs before the expensive extra-seed pipelines.
  const PipelineArtifacts primary = load_persisted(cfg.output_dir);
  FileHashes inputs = m.hash_files(pipeline_files());
  std::vector<MethodEvaluation> primary_evals;
  std::vector<double> primary_seconds;
  for (const std::string& method : methods) {
    const auto start = std::chrono::steady_clock::now();
    primary_evals.push_back(evaluate_persisted(method, primary, cfg, m, inputs));
    primary_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  if (cache_hit(m, opt, "evaluate", hash, inputs, log)) return;

  const std::vector<RunConfig> configs = seed_configs(cfg);
  std::vector<PipelineArtifacts> extra;
  for (std::size_t s = 1; s < configs.size(); ++s) {
    log << "evaluate: building pipeline for seed " << configs[s].seed << "\n";
    extra.push_back(build_artifacts(configs[s]));
  }

  std::vector<EvalReport> reports;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<MethodEvaluation> per_seed{primary_evals[k]};
    if (is_builtin_method(methods[k])) {
      for (std::size_t s = 0; s < extra.size(); ++s) {
        per_seed.push_back(evaluate_method(methods[k], extra[s], configs[s + 1]));
      }
    }
    const double seconds =
        primary_seconds[k] +
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(summarize(methods[k], std::move(per_seed), seconds));
  }

  nlohmann::json sig = nlohmann::json::array();
  const auto gr = std::find_if(reports.begin(), reports.end(),
                               [](const EvalReport& r) { return r.method == "graphrank"; });
  if (gr != reports.end()) {
    std::vector<EvalReport> others;
    for (const EvalReport& r : reports) {
      if (r.method != "graphrank" && r.method != "ideal") others.push_back(r);
    }
    for (const SignificanceRow& row : significance(*gr, others)) {
      sig.push_back({{"baseline", row.baseline},
                     {"p_value", row.stats.p_value},
                     {"cohens_d", std::isfinite(row.stats.effect_size)
                                      ? nlohmann::json(row.stats.effect_size)
                                      : nlohmann::json(nullptr)},
                     {"u_statistic", row.stats.u_statistic},
                     {"samples", {row.stats.size_a, row.stats.size_b}},
                     {"significant_p_lt_0.05", row.significant},
                     {"large_effect_d_gt_0.8", row.large_effect}});
    }
  }

  nlohmann::json report_methods = nlohmann::json::array();
  for (const EvalReport& r : reports) report_methods.push_back(to_json(r));
  std::vector<std::uint64_t> seeds;
  for (const RunConfig& c : configs) seeds.push_back(c.seed);
  const nlohmann::json report = {
      {"config_hash", hash},
      {"seeds", seeds},
      {"primary", graph_summary(primary)},
      {"budget_grid", primary_evals.front().budgets},
      {"methods", report_methods},
      {"significance", sig},
  };
  text::write_file(cfg.output_dir / layout::kReport, report.dump(2) + "\n");

  const std::size_t steps = cfg.grid_steps;
  std::string table = "metric";
  for (const EvalReport& r : reports) table += "," + r.method;
  table += "\n";
  auto table_row = [&](const std::string& name, auto value) {
    table += name;
    for (const EvalReport& r : reports) table += "," + format_double(value(r));
    table += "\n";
  };
  table_row("atrc_mean", [](const EvalReport& r) { return r.atrc_mean; });
  table_row("atrc_sd", [](const EvalReport& r) { return r.atrc_sd; });
  for (std::size_t i = 0; i < steps; ++i) {
    table_row("trc_" + format_double(static_cast<double>(i + 1) / static_cast<double>(steps)),
              [i](const EvalReport& r) { return r.trc_by_step[i]; });
  }
  text::write_file(cfg.output_dir / layout::kTable, table);

  std::string curve = "method,budget_fraction,trc\n";
  for (const EvalReport& r : reports) {
    for (std::size_t i = 0; i < steps; ++i) {
      curve += r.method + "," +
               format_double(static_cast<double>(i + 1) / static_cast<double>(steps)) + "," +
               format_double(r.trc_by_step[i]) + "\n";
    }
  }
  text::write_file(cfg.output_dir / layout::kTrcCurve, curve);
  text::write_file(cfg.output_dir / layout::kDist, dist_csv(primary, cfg));

  finish_stage(m, "evaluate", hash, inputs,
               {layout::kReport, layout::kTable, layout::kTrcCurve, layout::kDist});
  log << "evaluate: ATRC over " << configs.size() << " seed(s)\n";
  for (const EvalReport& r : reports) {
    log << "  " << r.method << ": " << percent(r.atrc_mean) << "% (sd " << percent(r.atrc_sd)
        << ")\n";
  }
  for (const auto& row : sig) {
    log << "  graphrank vs " << row["baseline"].get<std::string>()
        << ": p=" << format_double(row["p_value"].get<double>())
        << (row["significant_p_lt_0.05"].get<bool>() ? " *" : "") << "\n";
  }
}

void cmd_ablate(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen", "train", "attrs"});
  const std::string hash = stage_hash(cfg, "evaluate");
  const FileHashes inputs = m.hash_files(pipeline_files());
  if (cache_hit(m, opt, "ablate", hash, inputs, log)) return;

  const SeedPipelines p = all_pipelines(cfg, log);
  const std::vector<AblationRow> rows = run_ablation(p.artifacts, p.configs);
  std::string csv = "variant,width,iterative,atrc_mean,atrc_sd,seeds\n";
  for (const AblationRow& row : rows) {
    csv += std::string(to_string(row.variant)) + "," + std::to_string(row.width) + "," +
           (variant_is_iterative(row.variant) ? "1" : "0") + "," + format_double(row.report.atrc_mean) +
           "," + format_double(row.report.atrc_sd) + "," + std::to_string(row.report.per_seed.size()) +
           "\n";
    log << "ablate: " << to_string(row.variant) << " (width " << row.width
        << "): " << percent(row.report.atrc_mean) << "%\n";
  }
  text::write_file(cfg.output_dir / layout::kAblation, csv);
  finish_stage(m, "ablate", hash, inputs, {layout::kAblation});
}

void cmd_repair(const StageOptions& opt, std::ostream& log) {
  const RunConfig& cfg = opt.cfg;
  RunManifest m = RunManifest::load(cfg.output_dir);
  require_stages(m, cfg, {"gen", "train", "attrs"});
  const std::string hash = stage_hash(cfg, "evaluate");
  const FileHashes inputs = m.hash_files(pipeline_files());
  if (cache_hit(m, opt, "repair", hash, inputs, log)) return;

  std::vector<std::string> methods{"random", "ideal"};
  for (const std::string& method : cfg.methods) {
    if (is_builtin_method(method) && std::find(methods.begin(), methods.end(), method) == methods.end()) {
      methods.push_back(method);
    }
  }
  const SeedPipelines p = all_pipelines(cfg, log);
  std::string csv = "method,seed,budget,baseline_accuracy,retrained_accuracy,delta_points\n";
  for (const std::string& method : methods) {
    const std::string label = method == "ideal" ? "oracle" : method;
    std::vector<double> deltas;
    for (std::size_t s = 0; s < p.artifacts.size(); ++s) {
      const RepairResult r = repair_method(method, p.artifacts[s], p.configs[s]);
      deltas.push_back(100.0 * r.delta);
      csv += label + "," + std::to_string(p.configs[s].seed) + "," + std::to_string(r.added) + "," +
             format_double(r.baseline_accuracy) + "," + format_double(r.retrained_accuracy) + "," +
             format_double(100.0 * r.delta) + "\n";
    }
    csv += label + ",mean,," + ",," + format_double(mean(deltas)) + "\n";
    log << "repair: " << label << " mean delta " << format_double(mean(deltas)) << " points\n";
  }
  text::write_file(cfg.output_dir / layout::kRepair, csv);
  finish_stage(m, "repair", hash, inputs, {layout::kRepair});
}

}  // namespace graphrank
