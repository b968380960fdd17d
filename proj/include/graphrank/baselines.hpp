#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/models.hpp"

namespace graphrank {

/// Full priority order over a candidate set, highest priority first.
struct Ranking {
  std::vector<std::size_t> ids;
  std::vector<double> scores;
  std::string method;

  std::size_t size() const noexcept { return ids.size(); }
  /// First `k` ids.
  std::vector<std::size_t> top(std::size_t k) const;
};

/// Sorts by descending score, ties to ascending id.
Ranking make_ranking(std::span<const std::size_t> ids, std::span<const double> scores,
                     std::string method);

Ranking rank_random(std::span<const std::size_t> unlabeled, std::uint64_t seed);
Ranking rank_entropy(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled);
Ranking rank_deepgini(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled);
/// Score p_second − p_max (0 is most uncertain).
Ranking rank_margin(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled);
/// Entropy of an MC-dropout averaged bundle; throws WrongSource otherwise.
Ranking rank_dropout(const PredictionBundle& aveo, std::span<const std::size_t> unlabeled);

double margin_score(std::span<const double> dist);

/// Neighbor support from the k nearest labelled nodes (Euclidean in the rows of
/// `representation`), each contributing 1/(1+dist) to its label; the support
/// vector s is normalized and the score is 1 − ⟨s, p⟩.
/// Throws KExceedsLabeled, EmptySet.
Ranking rank_datis(const DenseMatrix& representation, std::span<const std::size_t> labelled,
                   std::span<const int> labels, const PredictionBundle& bundle,
                   std::span<const std::size_t> unlabeled, std::size_t k);

/// p′ = (1−λ)·P_i + λ·mean_{j∈N(i)} P_j, scored by gini(p′); isolated nodes keep P_i.
Ranking rank_nns(const PredictionBundle& bundle, const Graph& g,
                 std::span<const std::size_t> unlabeled, double lambda);

/// Two-column CSV `node_id,score` in ranking order.
void save_ranking(const Ranking& ranking, const std::filesystem::path& path);
/// Validates descending scores and unique ids; the method tag is the file stem.
Ranking load_ranking(const std::filesystem::path& path);

}  // namespace graphrank
