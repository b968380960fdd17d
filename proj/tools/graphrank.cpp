// graphrank: prioritize test nodes of a graph node classifier.
//
//   graphrank gen --out run
//   graphrank train --out run
//   graphrank attrs --out run
//   graphrank prioritize --out run --method graphrank
//   graphrank evaluate --out run

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "graphrank/commands.hpp"
#include "graphrank/config.hpp"
#include "graphrank/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStale = 3;
constexpr int kExitRuntime = 4;

int exit_code_for(graphrank::ErrorCode code) {
  switch (code) {
    case graphrank::ErrorCode::ConfigError: return kExitConfig;
    case graphrank::ErrorCode::StaleArtifacts: return kExitStale;
    default: return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test input prioritization for graph node classifiers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool force = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--seed", seed, "Master seed (overrides seed)");
  app.add_flag("--force", force, "Rerun stages even when their inputs are unchanged");

  auto* gen = app.add_subcommand("gen", "Generate or import the graph");
  auto* train = app.add_subcommand("train", "Train the target GCN and the MLP");
  auto* attrs = app.add_subcommand("attrs", "Extract and enhance node attributes");
  auto* prioritize = app.add_subcommand("prioritize", "Rank or select test nodes with one method");
  auto* evaluate = app.add_subcommand("evaluate", "TRC/ATRC report for every configured method");
  auto* ablate = app.add_subcommand("ablate", "ATRC of each ranker variant");
  auto* repair = app.add_subcommand("repair", "Retrain with selected nodes and report accuracy deltas");

  graphrank::PrioritizeRequest request;
  std::optional<std::size_t> budget;
  std::string file;
  prioritize->add_option("--method", request.method, "random, entropy, deepgini, margin, dropout, datis, nns, graphrank, ideal or external")
      ->required();
  prioritize->add_option("--budget", budget, "Labeling budget");
  prioritize->add_option("--file", file, "Ranking CSV for --method external");

  for (auto* sub : {gen, train, attrs, prioritize, evaluate, ablate, repair}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    graphrank::StageOptions opt;
    opt.cfg = config_path.empty() ? graphrank::RunConfig() : graphrank::load_config(config_path);
    if (seed) opt.cfg = opt.cfg.with_seed(*seed);
    if (!out_dir.empty()) opt.cfg.output_dir = out_dir;
    opt.cfg.validate();
    opt.force = force;
    std::filesystem::create_directories(opt.cfg.output_dir);

    std::ostream& log = std::cout;
    if (gen->parsed()) graphrank::cmd_gen(opt, log);
    if (train->parsed()) graphrank::cmd_train(opt, log);
    if (attrs->parsed()) graphrank::cmd_attrs(opt, log);
    if (prioritize->parsed()) {
      request.budget = budget;
      request.file = file;
      graphrank::cmd_prioritize(opt, request, log);
    }
    if (evaluate->parsed()) graphrank::cmd_evaluate(opt, log);
    if (ablate->parsed()) graphrank::cmd_ablate(opt, log);
    if (repair->parsed()) graphrank::cmd_repair(opt, log);
  } catch (const graphrank::Error& e) {
    std::cerr << "graphrank: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "graphrank: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
