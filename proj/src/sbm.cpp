#include "graphrank/sbm.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "graphrank/error.hpp"
#include "graphrank/random.hpp"

namespace graphrank {

void SbmParams::validate() const {
  auto check = [](bool ok, const char* field, const std::string& why) {
    require(ok, ErrorCode::InvalidParameter, std::string(field) + ": " + why);
  };
  check(num_classes >= 1, "num_classes", "must be >= 1");
  check(n >= num_classes, "n", "must be >= num_classes");
  check(p_in >= 0.0 && p_in <= 1.0, "p_in", "must lie in [0, 1]");
  check(p_out >= 0.0 && p_out <= 1.0, "p_out", "must lie in [0, 1]");
  check(feature_dim >= 1, "feature_dim", "must be >= 1");
  check(std::isfinite(signal), "signal", "must be finite");
  check(std::isfinite(noise) && noise >= 0.0, "noise", "must be finite and >= 0");
  check(train_fraction > 0.0 && validation_fraction > 0.0 &&
            train_fraction + validation_fraction < 1.0,
        "train_fraction", "train and validation fractions must be positive and sum below 1");
}

Graph generate_sbm(const SbmParams& params) {
  params.validate();
  const std::size_t n = params.n;
  const std::size_t c = params.num_classes;

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % c);

  Rng edge_rng(mix_seed(params.seed, 1));
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = labels[u] == labels[v] ? params.p_in : params.p_out;
      if (edge_rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }

  Rng feature_rng(mix_seed(params.seed, 2));
  DenseMatrix features(n, params.feature_dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = features.row(i);
    for (double& x : row) x = params.noise * feature_rng.normal();
    row[static_cast<std::size_t>(labels[i]) % params.feature_dim] += params.signal;
  }

  Rng split_rng(mix_seed(params.seed, 3));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  split_rng.shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(
      std::llround(params.train_fraction * static_cast<double>(n)));
  const auto n_val = static_cast<std::size_t>(
      std::llround(params.validation_fraction * static_cast<double>(n)));
  require(n_train >= 1 && n_val >= 1 && n_train + n_val < n, ErrorCode::DegenerateGraph,
          "n=" + std::to_string(n) + " too small for a non-empty train/val/test split");
  std::vector<Split> splits(n, Split::Test);
  for (std::size_t k = 0; k < n_train; ++k) splits[order[k]] = Split::Train;
  for (std::size_t k = n_train; k < n_train + n_val; ++k) splits[order[k]] = Split::Validation;

  return build_graph(edges, n, std::move(features), std::move(labels), c, std::move(splits));
}

}  // namespace graphrank
