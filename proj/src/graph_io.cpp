#include "graphrank/graph_io.hpp"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "graphrank/error.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.filename().string() + " line " + std::to_string(line);
}

std::vector<std::string_view> fields(const text::Line& line, char delimiter,
                                     std::size_t expected, const std::filesystem::path& path) {
  auto parts = text::split(line.text, delimiter);
  if (parts.size() != expected) {
    throw Error(ErrorCode::ParseError, where(path, line.number) + ": expected " +
                                           std::to_string(expected) + " fields, got " +
                                           std::to_string(parts.size()));
  }
  return parts;
}

}  // namespace

GraphFiles GraphFiles::in_directory(const std::filesystem::path& dir) {
  return {dir / "edges.tsv", dir / "features.csv", dir / "labels.tsv", dir / "splits.tsv"};
}

Graph load_graph(const GraphFiles& files, std::optional<std::size_t> num_classes) {
  const auto label_lines = text::read_lines(files.labels);
  const std::size_t n = label_lines.size();
  std::vector<int> labels(n, -1);
  int max_label = -1;
  for (const auto& line : label_lines) {
    const auto parts = fields(line, '\t', 2, files.labels);
    const std::string at = where(files.labels, line.number);
    const std::size_t node = text::parse_index(parts[0], at);
    const long long label = text::parse_int(parts[1], at);
    require(node < n, ErrorCode::InconsistentDimensions, at + ": node id beyond label count");
    require(labels[node] == -1, ErrorCode::InconsistentDimensions, at + ": duplicate node");
    require(label >= 0, ErrorCode::LabelOutOfRange, at);
    labels[node] = static_cast<int>(label);
    max_label = std::max(max_label, labels[node]);
  }

  const auto feature_lines = text::read_lines(files.features);
  require(feature_lines.size() == n, ErrorCode::InconsistentDimensions,
          "features.csv has " + std::to_string(feature_lines.size()) + " rows for " +
              std::to_string(n) + " labelled nodes");
  std::size_t d = 0;
  std::vector<double> values;
  for (const auto& line : feature_lines) {
    const auto parts = text::split(line.text, ',');
    if (d == 0) d = parts.size();
    require(parts.size() == d, ErrorCode::InconsistentDimensions,
            where(files.features, line.number) + ": row width " + std::to_string(parts.size()) +
                " != " + std::to_string(d));
    for (const auto part : parts) {
      values.push_back(text::parse_double(part, where(files.features, line.number)));
    }
  }

  const auto split_lines = text::read_lines(files.splits);
  require(split_lines.size() == n, ErrorCode::InconsistentDimensions,
          "splits.tsv row count != node count");
  std::vector<Split> splits(n, Split::Test);
  std::vector<bool> seen(n, false);
  for (const auto& line : split_lines) {
    const auto parts = fields(line, '\t', 2, files.splits);
    const std::string at = where(files.splits, line.number);
    const std::size_t node = text::parse_index(parts[0], at);
    require(node < n && !seen[node], ErrorCode::InconsistentDimensions,
            at + ": node id out of range or repeated");
    seen[node] = true;
    try {
      splits[node] = parse_split(parts[1]);
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, at + ": unknown split '" + std::string(parts[1]) + "'");
    }
  }

  std::vector<Edge> edges;
  for (const auto& line : text::read_lines(files.edges)) {
    const auto parts = fields(line, '\t', 2, files.edges);
    const std::string at = where(files.edges, line.number);
    edges.emplace_back(text::parse_index(parts[0], at), text::parse_index(parts[1], at));
  }

  const std::size_t c = num_classes.value_or(static_cast<std::size_t>(max_label + 1));
  return build_graph(edges, n, DenseMatrix(n, d, std::move(values)), std::move(labels), c,
                     std::move(splits));
}

Graph load_graph_dir(const std::filesystem::path& dir) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(text::read_file(dir / "meta.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "meta.json: " + std::string(e.what()));
  }
  const auto n = meta.at("n").get<std::size_t>();
  const auto d = meta.at("d").get<std::size_t>();
  const auto c = meta.at("c").get<std::size_t>();
  Graph g = load_graph(GraphFiles::in_directory(dir), c);
  require(g.num_nodes() == n && g.feature_dim() == d, ErrorCode::InconsistentDimensions,
          "meta.json disagrees with graph files");
  return g;
}

void save_graph(const Graph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto files = GraphFiles::in_directory(dir);

  std::string edges;
  for (const auto& [u, v] : g.edge_list()) {
    edges += std::to_string(u) + '\t' + std::to_string(v) + '\n';
  }
  text::write_file(files.edges, edges);

  std::string features;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const auto row = g.features().row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) features += ',';
      features += text::format_double(row[j]);
    }
    features += '\n';
  }
  text::write_file(files.features, features);

  std::string labels;
  std::string splits;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    labels += std::to_string(i) + '\t' + std::to_string(g.labels()[i]) + '\n';
    splits += std::to_string(i) + '\t' + std::string(to_string(g.splits()[i])) + '\n';
  }
  text::write_file(files.labels, labels);
  text::write_file(files.splits, splits);

  const nlohmann::json meta = {{"n", g.num_nodes()}, {"d", g.feature_dim()}, {"c", g.num_classes()}};
  text::write_file(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace graphrank
