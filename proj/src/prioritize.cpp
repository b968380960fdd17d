#include "graphrank/prioritize.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "graphrank/error.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

LabeledPool construct_training_set(const Graph& g, const PredictionBundle& bundle,
                                   const DenseMatrix& attributes) {
  require(bundle.num_nodes() == g.num_nodes() && attributes.rows() == g.num_nodes(),
          ErrorCode::RowCountMismatch, "bundle and attributes must cover every node");
  const std::vector<std::size_t> validation = g.nodes_in(Split::Validation);
  require(!validation.empty(), ErrorCode::EmptyValidation, "validation split is empty");
  std::vector<int> labels(validation.size());
  for (std::size_t k = 0; k < validation.size(); ++k) {
    const std::size_t i = validation[k];
    labels[k] = bundle.predicted[i] != g.labels()[i] ? 1 : 0;
  }
  LabeledPool pool;
  pool.append(attributes, validation, labels);
  return pool;
}

std::vector<int> GroundTruthOracle::annotate(std::span<const std::size_t> ids) {
  std::vector<int> out(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    require(ids[k] < failures_.size(), ErrorCode::InvalidParameter, "oracle query out of range");
    out[k] = failures_[ids[k]] ? 1 : 0;
  }
  queries_ += ids.size();
  return out;
}

std::vector<std::size_t> SelectionResult::selected() const {
  std::vector<std::size_t> out;
  for (const auto& round : rounds) out.insert(out.end(), round.ids.begin(), round.ids.end());
  return out;
}

std::vector<double> SelectionResult::scores() const {
  std::vector<double> out;
  for (const auto& round : rounds) out.insert(out.end(), round.scores.begin(), round.scores.end());
  return out;
}

std::size_t round_budget_for(std::size_t budget, std::size_t rounds) {
  require(rounds >= 1, ErrorCode::InvalidParameter, "rounds must be >= 1");
  return std::max<std::size_t>(1, (budget + rounds - 1) / rounds);
}

std::vector<ScoredNode> rank_candidates(const Classifier& classifier, const DenseMatrix& attributes,
                                        std::span<const std::size_t> candidates,
                                        std::optional<std::size_t> fallback_column) {
  const DenseMatrix rows = attributes.select_rows(candidates);
  const std::vector<double> decision = classifier.decision_function(rows);
  std::vector<ScoredNode> ranked(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    ranked[k] = {candidates[k], decision[k], sigmoid(decision[k])};
  }
  if (classifier.is_constant() && fallback_column) {
    const std::size_t col = *fallback_column;
    require(col < attributes.cols(), ErrorCode::WidthMismatch, "fallback column out of range");
    std::sort(ranked.begin(), ranked.end(), [&](const ScoredNode& a, const ScoredNode& b) {
      const double fa = attributes(a.id, col);
      const double fb = attributes(b.id, col);
      if (fa != fb) return fa > fb;
      return a.id < b.id;
    });
  } else {
    std::sort(ranked.begin(), ranked.end(), [](const ScoredNode& a, const ScoredNode& b) {
      if (a.decision != b.decision) return a.decision > b.decision;
      return a.id < b.id;
    });
  }
  return ranked;
}

namespace {

void validate_request(const DenseMatrix& attributes, const LabeledPool& pool,
                      std::span<const std::size_t> unlabeled, const PrioritizeOptions& options) {
  require(options.budget >= 1, ErrorCode::InvalidParameter, "budget must be >= 1");
  require(options.round_budget >= 1, ErrorCode::InvalidParameter, "round budget must be >= 1");
  require(options.budget <= unlabeled.size(), ErrorCode::BudgetExceedsPool,
          "budget " + std::to_string(options.budget) + " exceeds " +
              std::to_string(unlabeled.size()) + " unlabeled nodes");
  pool.validate();
  require(pool.rows.cols() == attributes.cols(), ErrorCode::WidthMismatch,
          "pool width differs from the attribute width");
  const std::unordered_set<std::size_t> pooled(pool.ids.begin(), pool.ids.end());
  std::unordered_set<std::size_t> seen;
  for (const std::size_t id : unlabeled) {
    require(id < attributes.rows(), ErrorCode::InvalidParameter, "unlabeled id out of range");
    require(seen.insert(id).second, ErrorCode::InvalidParameter, "duplicate unlabeled id");
    require(!pooled.contains(id), ErrorCode::InvalidParameter,
            "node " + std::to_string(id) + " is both labeled and unlabeled");
  }
}

}  // namespace

SelectionResult prioritize_iterative(const DenseMatrix& attributes, LabeledPool pool,
                                     std::span<const std::size_t> unlabeled, LabelOracle& oracle,
                                     const PrioritizeOptions& options,
                                     const ClassifierTrainer& trainer) {
  validate_request(attributes, pool, unlabeled, options);
  SelectionResult result{options.budget, options.round_budget, {}};
  std::vector<std::size_t> remaining(unlabeled.begin(), unlabeled.end());
  std::size_t budget = options.budget;
  while (budget > 0) {
    const auto classifier = trainer.train(pool, options.seed);
    const auto ranked = rank_candidates(*classifier, attributes, remaining, options.fallback_column);
    const std::size_t take = std::min(options.round_budget, budget);
    SelectionRound round;
    for (std::size_t k = 0; k < take; ++k) {
      round.ids.push_back(ranked[k].id);
      round.scores.push_back(ranked[k].score);
    }
    const std::vector<int> labels = oracle.annotate(round.ids);
    budget -= take;
    pool.append(attributes, round.ids, labels);
    const std::unordered_set<std::size_t> taken(round.ids.begin(), round.ids.end());
    std::erase_if(remaining, [&](std::size_t id) { return taken.contains(id); });
    result.rounds.push_back(std::move(round));
  }
  return result;
}

SelectionResult prioritize_single(const DenseMatrix& attributes, const LabeledPool& pool,
                                  std::span<const std::size_t> unlabeled,
                                  const PrioritizeOptions& options,
                                  const ClassifierTrainer& trainer) {
  PrioritizeOptions single = options;
  single.round_budget = std::max<std::size_t>(options.budget, 1);
  validate_request(attributes, pool, unlabeled, single);
  const auto classifier = trainer.train(pool, options.seed);
  const auto ranked = rank_candidates(*classifier, attributes, unlabeled, options.fallback_column);
  SelectionRound round;
  for (std::size_t k = 0; k < single.budget; ++k) {
    round.ids.push_back(ranked[k].id);
    round.scores.push_back(ranked[k].score);
  }
  return {single.budget, single.round_budget, {std::move(round)}};
}

void save_selection(const SelectionResult& selection, const ClassifierTrainer& trainer,
                    std::uint64_t seed, const std::filesystem::path& path) {
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t r = 0; r < selection.rounds.size(); ++r) {
    rounds.push_back({{"round", r + 1},
                      {"selected_ids", selection.rounds[r].ids},
                      {"scores", selection.rounds[r].scores}});
  }
  nlohmann::json hyper = nlohmann::json::object();
  hyper["classifier"] = trainer.name();
  for (const auto& [key, value] : trainer.hyperparameters()) hyper[key] = value;
  const nlohmann::json j = {{"budget", selection.budget},
                            {"round_budget", selection.round_budget},
                            {"rounds", rounds},
                            {"classifier_hyper", hyper},
                            {"seed", seed}};
  text::write_file(path, j.dump(2) + "\n");
}

SelectionResult load_selection(const std::filesystem::path& path) {
  try {
    const auto j = nlohmann::json::parse(text::read_file(path));
    SelectionResult result;
    result.budget = j.at("budget").get<std::size_t>();
    result.round_budget = j.at("round_budget").get<std::size_t>();
    for (const auto& r : j.at("rounds")) {
      result.rounds.push_back({r.at("selected_ids").get<std::vector<std::size_t>>(),
                               r.at("scores").get<std::vector<double>>()});
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace graphrank
