#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include "graphrank/graph.hpp"

namespace graphrank {

struct GraphFiles {
  std::filesystem::path edges;     // src<TAB>dst per line, '#' comments
  std::filesystem::path features;  // N lines of d comma-separated reals
  std::filesystem::path labels;    // node<TAB>label
  std::filesystem::path splits;    // node<TAB>{train|val|test}

  static GraphFiles in_directory(const std::filesystem::path& dir);
};

/// The node count comes from the label file; `num_classes` defaults to max label + 1.
/// Throws ParseError (with file and line) or InconsistentDimensions.
Graph load_graph(const GraphFiles& files, std::optional<std::size_t> num_classes = std::nullopt);

/// Reads the four files plus meta.json {n, d, c} and cross-checks the dimensions.
Graph load_graph_dir(const std::filesystem::path& dir);

/// Writes edges.tsv, features.csv, labels.tsv, splits.tsv and meta.json.
void save_graph(const Graph& g, const std::filesystem::path& dir);

}  // namespace graphrank
