#include "graphrank/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "graphrank/attributes.hpp"
#include "graphrank/error.hpp"
#include "graphrank/random.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

void require_nonempty(std::span<const std::size_t> ids) {
  require(!ids.empty(), ErrorCode::EmptySet, "no candidate nodes");
}

template <typename Metric>
Ranking rank_by(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled,
                Metric metric, std::string method) {
  require_nonempty(unlabeled);
  std::vector<double> scores(unlabeled.size());
  for (std::size_t k = 0; k < unlabeled.size(); ++k) {
    require(unlabeled[k] < bundle.num_nodes(), ErrorCode::InvalidParameter, "node id out of range");
    scores[k] = metric(bundle.probs.row(unlabeled[k]));
  }
  return make_ranking(unlabeled, scores, std::move(method));
}

}  // namespace

std::vector<std::size_t> Ranking::top(std::size_t k) const {
  require(k <= ids.size(), ErrorCode::BudgetExceedsPool, "prefix longer than ranking");
  return {ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k)};
}

Ranking make_ranking(std::span<const std::size_t> ids, std::span<const double> scores,
                     std::string method) {
  require(ids.size() == scores.size(), ErrorCode::InvalidParameter, "ids/scores length differ");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  Ranking out;
  out.method = std::move(method);
  out.ids.reserve(ids.size());
  out.scores.reserve(ids.size());
  for (const std::size_t k : order) {
    out.ids.push_back(ids[k]);
    out.scores.push_back(scores[k]);
  }
  return out;
}

Ranking rank_random(std::span<const std::size_t> unlabeled, std::uint64_t seed) {
  require_nonempty(unlabeled);
  std::vector<std::size_t> ids(unlabeled.begin(), unlabeled.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(ids));
  Ranking out;
  out.method = "random";
  out.ids = std::move(ids);
  out.scores.resize(out.ids.size());
  const auto n = static_cast<double>(out.ids.size());
  for (std::size_t k = 0; k < out.scores.size(); ++k) {
    out.scores[k] = (n - static_cast<double>(k)) / n;
  }
  return out;
}

Ranking rank_entropy(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled) {
  return rank_by(bundle, unlabeled, [](std::span<const double> p) { return entropy(p); }, "entropy");
}

Ranking rank_deepgini(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled) {
  return rank_by(bundle, unlabeled, [](std::span<const double> p) { return gini(p); }, "deepgini");
}

double margin_score(std::span<const double> dist) {
  require(!dist.empty(), ErrorCode::NotADistribution, "empty distribution");
  double first = -1.0;
  double second = -1.0;
  for (const double p : dist) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  if (dist.size() == 1) second = 0.0;
  return second - first;
}

Ranking rank_margin(const PredictionBundle& bundle, std::span<const std::size_t> unlabeled) {
  return rank_by(bundle, unlabeled, margin_score, "margin");
}

Ranking rank_dropout(const PredictionBundle& aveo, std::span<const std::size_t> unlabeled) {
  require(aveo.source == PredictionSource::GcnMcDropout, ErrorCode::WrongSource,
          "dropout ranking needs an MC-dropout bundle");
  return rank_by(aveo, unlabeled, [](std::span<const double> p) { return entropy(p); }, "dropout");
}

Ranking rank_datis(const DenseMatrix& representation, std::span<const std::size_t> labelled,
                   std::span<const int> labels, const PredictionBundle& bundle,
                   std::span<const std::size_t> unlabeled, std::size_t k) {
  require_nonempty(unlabeled);
  require(!labelled.empty(), ErrorCode::EmptySet, "no labelled reference nodes");
  require(labels.size() == labelled.size(), ErrorCode::InvalidParameter, "labels length");
  require(k >= 1 && k <= labelled.size(), ErrorCode::KExceedsLabeled,
          "k=" + std::to_string(k) + " with " + std::to_string(labelled.size()) + " labelled nodes");
  const std::size_t c = bundle.num_classes();
  std::vector<double> scores(unlabeled.size());
  std::vector<std::pair<double, std::size_t>> dist(labelled.size());
  std::vector<double> support(c);
  for (std::size_t u = 0; u < unlabeled.size(); ++u) {
    const auto x = representation.row(unlabeled[u]);
    for (std::size_t l = 0; l < labelled.size(); ++l) {
      const auto y = representation.row(labelled[l]);
      double sq = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) sq += (x[j] - y[j]) * (x[j] - y[j]);
      dist[l] = {std::sqrt(sq), l};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::fill(support.begin(), support.end(), 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      const auto [d, l] = dist[r];
      const int y = labels[l];
      require(y >= 0 && static_cast<std::size_t>(y) < c, ErrorCode::LabelOutOfRange, "DATIS label");
      const double w = 1.0 / (1.0 + d);
      support[static_cast<std::size_t>(y)] += w;
      total += w;
    }
    const auto p = bundle.probs.row(unlabeled[u]);
    double agreement = 0.0;
    for (std::size_t j = 0; j < c; ++j) agreement += support[j] / total * p[j];
    scores[u] = 1.0 - agreement;
  }
  return make_ranking(unlabeled, scores, "datis");
}

Ranking rank_nns(const PredictionBundle& bundle, const Graph& g,
                 std::span<const std::size_t> unlabeled, double lambda) {
  require(lambda >= 0.0 && lambda <= 1.0, ErrorCode::InvalidLambda,
          "lambda " + std::to_string(lambda) + " outside [0, 1]");
  require(bundle.num_nodes() == g.num_nodes(), ErrorCode::RowCountMismatch, "bundle/graph size");
  require_nonempty(unlabeled);
  const std::size_t c = bundle.num_classes();
  std::vector<double> smoothed(c);
  std::vector<double> scores(unlabeled.size());
  for (std::size_t u = 0; u < unlabeled.size(); ++u) {
    const std::size_t i = unlabeled[u];
    const auto p = bundle.probs.row(i);
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty() || lambda == 0.0) {
      std::copy(p.begin(), p.end(), smoothed.begin());
    } else {
      std::fill(smoothed.begin(), smoothed.end(), 0.0);
      for (const std::size_t j : nbrs) {
        const auto q = bundle.probs.row(j);
        for (std::size_t k = 0; k < c; ++k) smoothed[k] += q[k];
      }
      const double inv = 1.0 / static_cast<double>(nbrs.size());
      for (std::size_t k = 0; k < c; ++k) smoothed[k] = (1.0 - lambda) * p[k] + lambda * smoothed[k] * inv;
    }
    scores[u] = gini(smoothed);
  }
  return make_ranking(unlabeled, scores, "nns");
}

void save_ranking(const Ranking& ranking, const std::filesystem::path& path) {
  std::string out = "node_id,score\n";
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    out += std::to_string(ranking.ids[k]) + ',' + text::format_double(ranking.scores[k]) + '\n';
  }
  text::write_file(path, out);
}

Ranking load_ranking(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  require(!lines.empty() && lines.front().text == "node_id,score", ErrorCode::ParseError,
          path.string() + ": expected header node_id,score");
  Ranking out;
  out.method = path.stem().string();
  std::unordered_set<std::size_t> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string at = path.filename().string() + " line " + std::to_string(lines[r].number);
    const auto parts = text::split(lines[r].text, ',');
    require(parts.size() == 2, ErrorCode::ParseError, at + ": expected node_id,score");
    const std::size_t id = text::parse_index(parts[0], at);
    const double score = text::parse_double(parts[1], at);
    require(seen.insert(id).second, ErrorCode::ParseError, at + ": duplicate node id");
    require(out.scores.empty() || score <= out.scores.back(), ErrorCode::ParseError,
            at + ": scores must be non-increasing");
    out.ids.push_back(id);
    out.scores.push_back(score);
  }
  return out;
}

}  // namespace graphrank
