#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "graphrank/graph.hpp"
#include "graphrank/kernels.hpp"
#include "graphrank/models.hpp"
#include "support.hpp"

namespace testing {

/// Random 6-node graph with 3 features and 3 classes.
inline Graph random_six_node_graph(graphrank::Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < 6; ++u) {
    for (std::size_t v = u + 1; v < 6; ++v) {
      if (rng.bernoulli(0.4)) edges.emplace_back(u, v);
    }
  }
  DenseMatrix x = random_matrix(6, 3, rng);
  std::vector<int> labels(6);
  for (int& y : labels) y = static_cast<int>(rng.below(3));
  return graphrank::build_graph(edges, 6, std::move(x), std::move(labels), 3, cyclic_splits(6));
}

/// Worst relative error of the analytic GCN gradient (with a dropout mask
/// and weight decay) against central differences.
inline double gcn_gradient_error(std::uint64_t seed) {
  graphrank::Rng rng(seed);
  const Graph g = random_six_node_graph(rng);
  const auto a_hat = graphrank::sym_norm_adjacency(g);
  const DenseMatrix ax = graphrank::spmm(a_hat, g.features());
  DenseMatrix w1 = random_matrix(3, 4, rng, 0.7);
  DenseMatrix w2 = random_matrix(4, 3, rng, 0.7);
  const DenseMatrix mask = graphrank::sample_dropout_mask(6, 4, 0.3, rng).values;
  const std::vector<std::size_t> supervised{0, 2, 3, 5};
  const double wd = 0.01;
  const auto analytic =
      graphrank::gcn_loss_and_gradients(w1, w2, a_hat, ax, g.labels(), supervised, wd, &mask);
  auto loss = [&] {
    return graphrank::gcn_loss_and_gradients(w1, w2, a_hat, ax, g.labels(), supervised, wd, &mask).loss;
  };
  const DenseMatrix n1 = numeric_gradient(w1, loss);
  const DenseMatrix n2 = numeric_gradient(w2, loss);
  return std::max(max_relative_error(analytic.w1.values(), n1.values()),
                  max_relative_error(analytic.w2.values(), n2.values()));
}

inline double mlp_gradient_error(std::uint64_t seed) {
  graphrank::Rng rng(seed);
  const DenseMatrix x = random_matrix(6, 3, rng);
  std::vector<int> labels(6);
  for (int& y : labels) y = static_cast<int>(rng.below(3));
  graphrank::MlpModel m;
  m.w1 = random_matrix(3, 5, rng, 0.7);
  m.w2 = random_matrix(5, 3, rng, 0.7);
  m.b1.resize(5);
  m.b2.resize(3);
  for (double& b : m.b1) b = 0.3 * rng.normal();
  for (double& b : m.b2) b = 0.3 * rng.normal();
  const DenseMatrix mask = graphrank::sample_dropout_mask(6, 5, 0.3, rng).values;
  const double wd = 0.01;
  const auto analytic = graphrank::mlp_loss_and_gradients(m, x, labels, wd, &mask);
  auto loss = [&] { return graphrank::mlp_loss_and_gradients(m, x, labels, wd, &mask).loss; };
  double worst = 0.0;
  worst = std::max(worst, max_relative_error(analytic.w1.values(), numeric_gradient(m.w1, loss).values()));
  worst = std::max(worst, max_relative_error(analytic.w2.values(), numeric_gradient(m.w2, loss).values()));
  DenseMatrix b1(1, m.b1.size(), m.b1);
  DenseMatrix b2(1, m.b2.size(), m.b2);
  auto loss_b = [&] {
    std::copy(b1.values().begin(), b1.values().end(), m.b1.begin());
    std::copy(b2.values().begin(), b2.values().end(), m.b2.begin());
    return loss();
  };
  worst = std::max(worst, max_relative_error(analytic.b1, numeric_gradient(b1, loss_b).values()));
  worst = std::max(worst, max_relative_error(analytic.b2, numeric_gradient(b2, loss_b).values()));
  return worst;
}

}  // namespace testing
