#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/sparse.hpp"

namespace graphrank {

enum class Split : std::uint8_t { Train, Validation, Test };

std::string_view to_string(Split split);
/// Accepts "train", "val" and "test".
Split parse_split(std::string_view text);

using Edge = std::pair<std::size_t, std::size_t>;

/// Immutable undirected node-classification graph. Adjacency is stored in both
/// directions, sorted, without duplicates or self-loops.
class Graph {
 public:
  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t feature_dim() const noexcept { return features_.cols(); }
  /// Undirected edge count.
  std::size_t num_edges() const noexcept { return neighbor_ids_.size() / 2; }

  std::span<const std::size_t> neighbors(std::size_t node) const {
    return {neighbor_ids_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  std::size_t degree(std::size_t node) const { return offsets_[node + 1] - offsets_[node]; }

  const DenseMatrix& features() const noexcept { return features_; }
  std::span<const int> labels() const noexcept { return labels_; }
  std::span<const Split> splits() const noexcept { return splits_; }

  /// Node ids carrying `split`, ascending.
  std::vector<std::size_t> nodes_in(Split split) const;

  /// Each undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_graph(std::span<const Edge>, std::size_t, DenseMatrix, std::vector<int>,
                           std::size_t, std::vector<Split>);

  std::size_t num_classes_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> neighbor_ids_;
  DenseMatrix features_;
  std::vector<int> labels_;
  std::vector<Split> splits_;
};

/// Symmetrizes, deduplicates and sorts `edges`; self-loops are dropped.
/// Throws DanglingEdge, LabelOutOfRange, EmptySplit, InconsistentDimensions.
Graph build_graph(std::span<const Edge> edges, std::size_t n, DenseMatrix features,
                  std::vector<int> labels, std::size_t num_classes, std::vector<Split> splits);

/// Â = D̃^(-1/2) (A + I) D̃^(-1/2) with d̃ = degree + 1.
SparseRowMatrix sym_norm_adjacency(const Graph& g);

/// A′ = (A + I) / (degree + 1), row-stochastic.
SparseRowMatrix row_norm_adjacency(const Graph& g);

std::vector<std::size_t> degrees(const Graph& g);

/// Fraction of undirected edges whose endpoints share a label (0 for edgeless graphs).
double edge_homophily(const Graph& g);

}  // namespace graphrank
