#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphrank/gbdt.hpp"
#include "graphrank/logistic.hpp"
#include "graphrank/models.hpp"
#include "graphrank/sbm.hpp"

namespace graphrank {

enum class AblationVariant { AW, AW_AG, AW_AG_EN, Complete };

std::string_view to_string(AblationVariant variant);
AblationVariant parse_variant(std::string_view text);

struct GraphSource {
  /// "sbm" or "dir".
  std::string kind = "sbm";
  std::filesystem::path dir;
  SbmParams sbm;
};

struct RankerConfig {
  /// "gbdt" or "logistic".
  std::string classifier = "gbdt";
  GbdtHyper gbdt;
  LogisticHyper logistic;
  /// Iterative rounds per budget; the round budget is ceil(b / rounds).
  std::size_t rounds = 10;
  AblationVariant variant = AblationVariant::Complete;
};

struct BaselineConfig {
  std::size_t datis_k = 10;
  double nns_lambda = 0.5;
  /// "features" or "embeddings" (GCN hidden layer).
  std::string datis_representation = "features";
};

/// Every runtime constant of a run. Defaults describe the homophilic SBM
/// benchmark with an under-trained target GCN.
struct RunConfig {
  GraphSource graph;
  TrainConfig gcn;
  TrainConfig mlp;
  McDropoutConfig mc_dropout;
  RankerConfig ranker;
  BaselineConfig baselines;
  std::size_t grid_steps = 10;
  std::size_t histogram_bins = 20;
  std::vector<std::string> methods{"random", "entropy", "deepgini", "margin",
                                   "dropout", "datis",   "nns",      "graphrank"};
  /// Master seed; component seeds derive from it.
  std::uint64_t seed = 0;
  /// Extra pipeline seeds evaluated in memory alongside the persisted run.
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = "out";

  RunConfig();

  /// Copy with the master seed replaced and component seeds re-derived.
  RunConfig with_seed(std::uint64_t seed) const;
  std::uint64_t mc_seed() const;

  void validate() const;
};

/// Parses a config JSON; unknown keys and invalid values raise ConfigError
/// naming the field path (e.g. "graph.sbm.p_in").
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Canonical JSON of the config sections a stage depends on.
nlohmann::json stage_inputs(const RunConfig& cfg, std::string_view stage);

}  // namespace graphrank
