#include "graphrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Validation: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "val") return Split::Validation;
  if (text == "test") return Split::Test;
  throw Error(ErrorCode::ParseError, "unknown split '" + std::string(text) + "'");
}

std::vector<std::size_t> Graph::nodes_in(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == split) out.push_back(i);
  }
  return out;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    for (const std::size_t v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::span<const Edge> edges, std::size_t n, DenseMatrix features,
                  std::vector<int> labels, std::size_t num_classes, std::vector<Split> splits) {
  require(features.rows() == n, ErrorCode::InconsistentDimensions,
          "feature rows " + std::to_string(features.rows()) + " != n " + std::to_string(n));
  require(labels.size() == n, ErrorCode::InconsistentDimensions, "label count != n");
  require(splits.size() == n, ErrorCode::InconsistentDimensions, "split count != n");
  features.check_finite();
  for (std::size_t i = 0; i < n; ++i) {
    require(labels[i] >= 0 && static_cast<std::size_t>(labels[i]) < num_classes,
            ErrorCode::LabelOutOfRange,
            "node " + std::to_string(i) + " label " + std::to_string(labels[i]));
  }
  for (const Split s : {Split::Train, Split::Validation, Split::Test}) {
    require(std::find(splits.begin(), splits.end(), s) != splits.end(), ErrorCode::EmptySplit,
            std::string(to_string(s)) + " split is empty");
  }

  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  std::size_t self_loops = 0;
  for (const auto& [u, v] : edges) {
    require(u < n && v < n, ErrorCode::DanglingEdge,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" +
                std::to_string(n));
    if (u == v) {
      ++self_loops;
      continue;
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  if (self_loops > 0) {
    std::cerr << "warning: dropped " << self_loops << " self-loop(s)\n";
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.num_classes_ = num_classes;
  g.offsets_.assign(n + 1, 0);
  g.neighbor_ids_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.neighbor_ids_.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  g.splits_ = std::move(splits);
  return g;
}

namespace {

/// (A + I) pattern with per-entry weight from `weight(row, col)`.
template <typename Weight>
SparseRowMatrix self_looped(const Graph& g, Weight weight) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> values;
  cols.reserve(2 * g.num_edges() + n);
  values.reserve(2 * g.num_edges() + n);
  for (std::size_t i = 0; i < n; ++i) {
    bool diagonal_done = false;
    for (const std::size_t j : g.neighbors(i)) {
      if (!diagonal_done && i < j) {
        cols.push_back(i);
        values.push_back(weight(i, i));
        diagonal_done = true;
      }
      cols.push_back(j);
      values.push_back(weight(i, j));
    }
    if (!diagonal_done) {
      cols.push_back(i);
      values.push_back(weight(i, i));
    }
    offsets[i + 1] = cols.size();
  }
  return {n, n, std::move(offsets), std::move(cols), std::move(values)};
}

}  // namespace

SparseRowMatrix sym_norm_adjacency(const Graph& g) {
  std::vector<double> inv_sqrt(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(i) + 1));
  }
  return self_looped(g, [&](std::size_t i, std::size_t j) { return inv_sqrt[i] * inv_sqrt[j]; });
}

SparseRowMatrix row_norm_adjacency(const Graph& g) {
  return self_looped(g, [&](std::size_t i, std::size_t) {
    return 1.0 / static_cast<double>(g.degree(i) + 1);
  });
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> out(g.num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.degree(i);
  return out;
}

double edge_homophily(const Graph& g) {
  const auto edges = g.edge_list();
  if (edges.empty()) return 0.0;
  std::size_t same = 0;
  for (const auto& [u, v] : edges) same += g.labels()[u] == g.labels()[v] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(edges.size());
}

}  // namespace graphrank
