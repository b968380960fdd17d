#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "graphrank/config.hpp"
#include "graphrank/pipeline.hpp"

namespace graphrank {

/// Relative artifact paths inside an output directory.
namespace layout {
inline constexpr const char* kGraphDir = "graph";
inline constexpr const char* kGcnCheckpoint = "models/gcn.ckpt";
inline constexpr const char* kMlpCheckpoint = "models/mlp.ckpt";
inline constexpr const char* kPredsDet = "preds/preds_det.csv";
inline constexpr const char* kPredsMc = "preds/preds_mc.csv";
inline constexpr const char* kPredsMlp = "preds/preds_mlp.csv";
inline constexpr const char* kAttributes = "attributes.csv";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kTable = "table.csv";
inline constexpr const char* kTrcCurve = "trc_curve.csv";
inline constexpr const char* kDist = "dist.csv";
inline constexpr const char* kAblation = "ablation.csv";
inline constexpr const char* kRepair = "repair.csv";

std::vector<std::string> graph_files();
std::string ranking(const std::string& method);
std::string selection(const std::string& method, std::size_t budget);
}  // namespace layout

struct StageOptions {
  RunConfig cfg;
  bool force = false;
};

/// Loads the persisted graph, models, predictions and attributes of `out_dir`.
PipelineArtifacts load_persisted(const std::filesystem::path& out_dir);

// Each command reads and writes cfg.output_dir, checks upstream stages against
// manifest.json and skips work whose inputs are unchanged unless `force` is set.
// Progress goes to `log`.
void cmd_gen(const StageOptions& opt, std::ostream& log);
void cmd_train(const StageOptions& opt, std::ostream& log);
void cmd_attrs(const StageOptions& opt, std::ostream& log);

struct PrioritizeRequest {
  std::string method;
  /// graphrank: one budget instead of every grid budget; checked against the pool otherwise.
  std::optional<std::size_t> budget;
  /// Ranking CSV for method "external".
  std::filesystem::path file;
};
void cmd_prioritize(const StageOptions& opt, const PrioritizeRequest& req, std::ostream& log);

void cmd_evaluate(const StageOptions& opt, std::ostream& log);
void cmd_ablate(const StageOptions& opt, std::ostream& log);
void cmd_repair(const StageOptions& opt, std::ostream& log);

}  // namespace graphrank
