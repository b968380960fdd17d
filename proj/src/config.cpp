#include "graphrank/config.hpp"

#include <set>
#include <string>

#include "graphrank/error.hpp"
#include "graphrank/random.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

constexpr std::uint64_t kGcnSeedStream = 100;
constexpr std::uint64_t kMlpSeedStream = 101;
constexpr std::uint64_t kMcSeedStream = 102;

/// Reads fields of one JSON object, remembering which keys were consumed.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(field(key), std::string("wrong type: ") + e.what());
    }
  }

  /// Nested object, if present.
  const nlohmann::json* child(const char* key) {
    if (!j_.contains(key)) return nullptr;
    used_.insert(key);
    return &j_.at(key);
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.contains(key)) fail(field(key), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& why) {
    throw Error(ErrorCode::ConfigError, where + ": " + why);
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void read_train(const nlohmann::json& j, const std::string& path, TrainConfig& cfg) {
  ObjectReader r(j, path);
  r.read("epochs", cfg.epochs);
  r.read("learning_rate", cfg.learning_rate);
  r.read("hidden", cfg.hidden);
  r.read("weight_decay", cfg.weight_decay);
  r.read("dropout", cfg.dropout);
  r.finish();
}

void read_sbm(const nlohmann::json& j, const std::string& path, SbmParams& p) {
  ObjectReader r(j, path);
  r.read("n", p.n);
  r.read("num_classes", p.num_classes);
  r.read("p_in", p.p_in);
  r.read("p_out", p.p_out);
  r.read("feature_dim", p.feature_dim);
  r.read("signal", p.signal);
  r.read("noise", p.noise);
  r.read("train_fraction", p.train_fraction);
  r.read("validation_fraction", p.validation_fraction);
  r.finish();
}

void read_gbdt(const nlohmann::json& j, const std::string& path, GbdtHyper& h) {
  ObjectReader r(j, path);
  r.read("num_trees", h.num_trees);
  r.read("max_depth", h.max_depth);
  r.read("shrinkage", h.shrinkage);
  r.read("lambda", h.lambda);
  r.read("min_child_weight", h.min_child_weight);
  r.finish();
}

void read_logistic(const nlohmann::json& j, const std::string& path, LogisticHyper& h) {
  ObjectReader r(j, path);
  r.read("epochs", h.epochs);
  r.read("learning_rate", h.learning_rate);
  r.read("l2", h.l2);
  r.finish();
}

/// Re-raises a validation failure as a ConfigError under `path`.
template <typename Fn>
void validate_under(const std::string& path, Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

nlohmann::json train_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"hidden", c.hidden},
          {"weight_decay", c.weight_decay},
          {"dropout", c.dropout}};
}

}  // namespace

std::string_view to_string(AblationVariant variant) {
  switch (variant) {
    case AblationVariant::AW: return "aw";
    case AblationVariant::AW_AG: return "aw_ag";
    case AblationVariant::AW_AG_EN: return "aw_ag_en";
    case AblationVariant::Complete: return "complete";
  }
  return "?";
}

AblationVariant parse_variant(std::string_view text) {
  if (text == "aw") return AblationVariant::AW;
  if (text == "aw_ag") return AblationVariant::AW_AG;
  if (text == "aw_ag_en") return AblationVariant::AW_AG_EN;
  if (text == "complete") return AblationVariant::Complete;
  throw Error(ErrorCode::ConfigError, "unknown ablation variant '" + std::string(text) + "'");
}

RunConfig::RunConfig() {
  gcn.epochs = 25;
  gcn.learning_rate = 0.01;
  gcn.hidden = 16;
  gcn.weight_decay = 5e-4;
  gcn.dropout = 0.5;
  mlp.epochs = 200;
  mlp.learning_rate = 0.01;
  mlp.hidden = 32;
  mlp.weight_decay = 5e-4;
  mlp.dropout = 0.2;
  *this = with_seed(seed);
}

RunConfig RunConfig::with_seed(std::uint64_t new_seed) const {
  RunConfig out = *this;
  out.seed = new_seed;
  out.graph.sbm.seed = new_seed;
  out.gcn.seed = mix_seed(new_seed, kGcnSeedStream);
  out.mlp.seed = mix_seed(new_seed, kMlpSeedStream);
  return out;
}

std::uint64_t RunConfig::mc_seed() const { return mix_seed(seed, kMcSeedStream); }

void RunConfig::validate() const {
  if (graph.kind != "sbm" && graph.kind != "dir") {
    ObjectReader::fail("graph.source", "must be 'sbm' or 'dir'");
  }
  if (graph.kind == "dir" && graph.dir.empty()) ObjectReader::fail("graph.dir", "required for source 'dir'");
  if (graph.kind == "sbm") validate_under("graph.sbm", [&] { graph.sbm.validate(); });
  validate_under("gcn", [&] { gcn.validate(); });
  validate_under("mlp", [&] { mlp.validate(); });
  if (mc_dropout.passes < 1) ObjectReader::fail("mc_dropout.passes", "must be >= 1");
  if (!(mc_dropout.rate >= 0.0 && mc_dropout.rate < 1.0)) {
    ObjectReader::fail("mc_dropout.rate", "must lie in [0, 1)");
  }
  if (ranker.classifier != "gbdt" && ranker.classifier != "logistic") {
    ObjectReader::fail("ranker.classifier", "must be 'gbdt' or 'logistic'");
  }
  validate_under("ranker.gbdt", [&] { ranker.gbdt.validate(); });
  if (ranker.rounds < 1) ObjectReader::fail("ranker.rounds", "must be >= 1");
  if (baselines.datis_k < 1) ObjectReader::fail("baselines.datis_k", "must be >= 1");
  if (!(baselines.nns_lambda >= 0.0 && baselines.nns_lambda <= 1.0)) {
    ObjectReader::fail("baselines.nns_lambda", "must lie in [0, 1]");
  }
  if (baselines.datis_representation != "features" && baselines.datis_representation != "embeddings") {
    ObjectReader::fail("baselines.datis_representation", "must be 'features' or 'embeddings'");
  }
  if (grid_steps < 1) ObjectReader::fail("budget_grid.steps", "must be >= 1");
  if (histogram_bins < 1) ObjectReader::fail("histogram_bins", "must be >= 1");
  if (methods.empty()) ObjectReader::fail("methods", "must not be empty");
}

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  ObjectReader root(j, "");
  std::uint64_t seed = cfg.seed;
  root.read("seed", seed);
  cfg = cfg.with_seed(seed);

  if (const auto* graph = root.child("graph")) {
    ObjectReader r(*graph, "graph");
    r.read("source", cfg.graph.kind);
    std::string dir;
    r.read("dir", dir);
    cfg.graph.dir = dir;
    if (const auto* sbm = r.child("sbm")) read_sbm(*sbm, "graph.sbm", cfg.graph.sbm);
    r.finish();
  }
  if (const auto* gcn = root.child("gcn")) read_train(*gcn, "gcn", cfg.gcn);
  if (const auto* mlp = root.child("mlp")) read_train(*mlp, "mlp", cfg.mlp);
  if (const auto* mc = root.child("mc_dropout")) {
    ObjectReader r(*mc, "mc_dropout");
    r.read("passes", cfg.mc_dropout.passes);
    r.read("rate", cfg.mc_dropout.rate);
    std::string average = "logits";
    r.read("average", average);
    if (average == "logits") {
      cfg.mc_dropout.average = McAverage::Logits;
    } else if (average == "probabilities") {
      cfg.mc_dropout.average = McAverage::Probabilities;
    } else {
      ObjectReader::fail("mc_dropout.average", "must be 'logits' or 'probabilities'");
    }
    r.finish();
  }
  if (const auto* ranker = root.child("ranker")) {
    ObjectReader r(*ranker, "ranker");
    r.read("classifier", cfg.ranker.classifier);
    r.read("rounds", cfg.ranker.rounds);
    std::string variant(to_string(cfg.ranker.variant));
    r.read("variant", variant);
    validate_under("ranker.variant", [&] { cfg.ranker.variant = parse_variant(variant); });
    if (const auto* g = r.child("gbdt")) read_gbdt(*g, "ranker.gbdt", cfg.ranker.gbdt);
    if (const auto* l = r.child("logistic")) read_logistic(*l, "ranker.logistic", cfg.ranker.logistic);
    r.finish();
  }
  if (const auto* b = root.child("baselines")) {
    ObjectReader r(*b, "baselines");
    r.read("datis_k", cfg.baselines.datis_k);
    r.read("nns_lambda", cfg.baselines.nns_lambda);
    r.read("datis_representation", cfg.baselines.datis_representation);
    r.finish();
  }
  if (const auto* grid = root.child("budget_grid")) {
    ObjectReader r(*grid, "budget_grid");
    r.read("steps", cfg.grid_steps);
    r.finish();
  }
  root.read("histogram_bins", cfg.histogram_bins);
  root.read("methods", cfg.methods);
  root.read("seeds", cfg.seeds);
  std::string out = cfg.output_dir.string();
  root.read("output_dir", out);
  cfg.output_dir = out;
  root.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const RunConfig& cfg) {
  const auto& s = cfg.graph.sbm;
  const auto& g = cfg.ranker.gbdt;
  const auto& l = cfg.ranker.logistic;
  return {
      {"seed", cfg.seed},
      {"graph",
       {{"source", cfg.graph.kind},
        {"dir", cfg.graph.dir.string()},
        {"sbm",
         {{"n", s.n},
          {"num_classes", s.num_classes},
          {"p_in", s.p_in},
          {"p_out", s.p_out},
          {"feature_dim", s.feature_dim},
          {"signal", s.signal},
          {"noise", s.noise},
          {"train_fraction", s.train_fraction},
          {"validation_fraction", s.validation_fraction}}}}},
      {"gcn", train_json(cfg.gcn)},
      {"mlp", train_json(cfg.mlp)},
      {"mc_dropout",
       {{"passes", cfg.mc_dropout.passes},
        {"rate", cfg.mc_dropout.rate},
        {"average", cfg.mc_dropout.average == McAverage::Logits ? "logits" : "probabilities"}}},
      {"ranker",
       {{"classifier", cfg.ranker.classifier},
        {"rounds", cfg.ranker.rounds},
        {"variant", std::string(to_string(cfg.ranker.variant))},
        {"gbdt",
         {{"num_trees", g.num_trees},
          {"max_depth", g.max_depth},
          {"shrinkage", g.shrinkage},
          {"lambda", g.lambda},
          {"min_child_weight", g.min_child_weight}}},
        {"logistic", {{"epochs", l.epochs}, {"learning_rate", l.learning_rate}, {"l2", l.l2}}}}},
      {"baselines",
       {{"datis_k", cfg.baselines.datis_k},
        {"nns_lambda", cfg.baselines.nns_lambda},
        {"datis_representation", cfg.baselines.datis_representation}}},
      {"budget_grid", {{"steps", cfg.grid_steps}}},
      {"histogram_bins", cfg.histogram_bins},
      {"methods", cfg.methods},
      {"seeds", cfg.seeds},
      {"output_dir", cfg.output_dir.string()},
  };
}

nlohmann::json stage_inputs(const RunConfig& cfg, std::string_view stage) {
  const nlohmann::json full = to_json(cfg);
  nlohmann::json out = {{"seed", cfg.seed}, {"graph", full["graph"]}};
  if (stage == "gen") return out;
  out["gcn"] = full["gcn"];
  out["mlp"] = full["mlp"];
  out["mc_dropout"] = full["mc_dropout"];
  if (stage == "train" || stage == "attrs") return out;
  out["ranker"] = full["ranker"];
  out["baselines"] = full["baselines"];
  out["budget_grid"] = full["budget_grid"];
  if (stage == "prioritize") return out;
  out["methods"] = full["methods"];
  out["seeds"] = full["seeds"];
  out["histogram_bins"] = full["histogram_bins"];
  return out;
}

}  // namespace graphrank
