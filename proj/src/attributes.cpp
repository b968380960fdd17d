#include "graphrank/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphrank/error.hpp"
#include "graphrank/kernels.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

constexpr double kDistributionTolerance = 1e-6;

void check_distribution(std::span<const double> dist) {
  double total = 0.0;
  for (const double p : dist) {
    require(p >= 0.0 && std::isfinite(p), ErrorCode::NotADistribution, "invalid probability");
    total += p;
  }
  require(std::abs(total - 1.0) <= kDistributionTolerance, ErrorCode::NotADistribution,
          "distribution sums to " + text::format_double(total));
}

void require_source(const PredictionBundle& bundle, PredictionSource expected) {
  require(bundle.source == expected, ErrorCode::WrongSource,
          "expected " + std::string(to_string(expected)) + " bundle, got " +
              std::string(to_string(bundle.source)));
}

}  // namespace

double entropy(std::span<const double> dist) {
  check_distribution(dist);
  double h = 0.0;
  for (const double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double gini(std::span<const double> dist) {
  check_distribution(dist);
  double sum_sq = 0.0;
  for (const double p : dist) sum_sq += p * p;
  return 1.0 - sum_sq;
}

std::vector<std::size_t> AttributeSchema::columns(ColumnGroup group) const {
  const std::size_t c = num_classes_;
  std::size_t start = 0;
  std::size_t count = 1;
  switch (group) {
    case ColumnGroup::DetProbs: start = 0; count = c; break;
    case ColumnGroup::DetEntropy: start = c; break;
    case ColumnGroup::DetGini: start = c + 1; break;
    case ColumnGroup::ProbEntropy: start = c + 2; break;
    case ColumnGroup::MlpProbs: start = c + 3; count = c; break;
    case ColumnGroup::MlpEntropy: start = 2 * c + 3; break;
    case ColumnGroup::DegreeNorm: start = 2 * c + 4; break;
  }
  std::vector<std::size_t> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + k;
  return out;
}

std::vector<std::size_t> AttributeSchema::columns(std::span<const ColumnGroup> groups) const {
  std::vector<std::size_t> out;
  for (const ColumnGroup g : groups) {
    const auto cols = columns(g);
    out.insert(out.end(), cols.begin(), cols.end());
  }
  return out;
}

std::vector<std::string> AttributeSchema::names() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < num_classes_; ++j) out.push_back("det_p" + std::to_string(j));
  out.emplace_back("det_entropy");
  out.emplace_back("det_gini");
  out.emplace_back("prob_entropy");
  for (std::size_t j = 0; j < num_classes_; ++j) out.push_back("mlp_q" + std::to_string(j));
  out.emplace_back("mlp_entropy");
  out.emplace_back("degree_norm");
  return out;
}

std::vector<std::string> AttributeSchema::enhanced_names() const {
  std::vector<std::string> out = names();
  const std::size_t base = out.size();
  for (std::size_t k = 0; k < base; ++k) out.push_back("agg_" + out[k]);
  return out;
}

DenseMatrix deterministic_output_attrs(const PredictionBundle& bundle) {
  require_source(bundle, PredictionSource::GcnDeterministic);
  const std::size_t c = bundle.num_classes();
  DenseMatrix out(bundle.num_nodes(), c + 2);
  for (std::size_t i = 0; i < bundle.num_nodes(); ++i) {
    const auto p = bundle.probs.row(i);
    auto dst = out.row(i);
    std::copy(p.begin(), p.end(), dst.begin());
    dst[c] = entropy(p);
    dst[c + 1] = gini(p);
  }
  return out;
}

DenseMatrix probabilistic_output_attrs(const PredictionBundle& aveo) {
  require_source(aveo, PredictionSource::GcnMcDropout);
  DenseMatrix out(aveo.num_nodes(), 1);
  for (std::size_t i = 0; i < aveo.num_nodes(); ++i) out(i, 0) = entropy(aveo.probs.row(i));
  return out;
}

DenseMatrix graph_node_attrs(const PredictionBundle& mlp_bundle) {
  require_source(mlp_bundle, PredictionSource::Mlp);
  const std::size_t c = mlp_bundle.num_classes();
  DenseMatrix out(mlp_bundle.num_nodes(), c + 1);
  for (std::size_t i = 0; i < mlp_bundle.num_nodes(); ++i) {
    const auto q = mlp_bundle.probs.row(i);
    auto dst = out.row(i);
    std::copy(q.begin(), q.end(), dst.begin());
    dst[c] = entropy(q);
  }
  return out;
}

DenseMatrix degree_attrs(const Graph& g) {
  const auto deg = degrees(g);
  DenseMatrix out(g.num_nodes(), 1);
  if (deg.empty()) return out;
  const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
  if (*lo == *hi) return out;
  const auto range = static_cast<double>(*hi - *lo);
  for (std::size_t i = 0; i < deg.size(); ++i) {
    out(i, 0) = static_cast<double>(deg[i] - *lo) / range;
  }
  return out;
}

AttributeMatrix assemble_z1(const DenseMatrix& det, const DenseMatrix& prob, const DenseMatrix& mlp,
                            const DenseMatrix& deg) {
  const std::size_t n = det.rows();
  require(prob.rows() == n && mlp.rows() == n && deg.rows() == n, ErrorCode::RowCountMismatch,
          "attribute blocks have differing row counts");
  require(det.cols() >= 3, ErrorCode::SchemaMismatch, "deterministic block too narrow");
  const std::size_t c = det.cols() - 2;
  require(prob.cols() == 1 && mlp.cols() == c + 1 && deg.cols() == 1, ErrorCode::SchemaMismatch,
          "attribute block widths do not match the schema for c=" + std::to_string(c));
  AttributeMatrix z1{hconcat(hconcat(hconcat(det, prob), mlp), deg), c};
  z1.values.check_finite();
  return z1;
}

EnhancedAttributeMatrix enhance(const AttributeMatrix& z1, const SparseRowMatrix& a_prime) {
  require(a_prime.rows() == z1.values.rows() && a_prime.cols() == z1.values.rows(),
          ErrorCode::ShapeMismatch, "A' does not match the attribute row count");
  return {hconcat(z1.values, spmm(a_prime, z1.values)), z1.num_classes, "row_norm_adjacency"};
}

std::vector<double> neighbor_failure_rate(const Graph& g, std::span<const std::uint8_t> failures) {
  require(failures.size() == g.num_nodes(), ErrorCode::ShapeMismatch, "failure vector length");
  std::vector<double> out(g.num_nodes(), 0.0);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    std::size_t failing = 0;
    for (const std::size_t j : nbrs) failing += failures[j] ? 1 : 0;
    out[i] = static_cast<double>(failing) / static_cast<double>(nbrs.size());
  }
  return out;
}

void save_attributes(const EnhancedAttributeMatrix& zf, const std::filesystem::path& path) {
  const auto names = zf.schema().enhanced_names();
  require(names.size() == zf.values.cols(), ErrorCode::SchemaMismatch,
          "attribute width does not match the schema");
  std::string out = "#" + std::string(kAttributeSchemaVersion) + " c=" +
                    std::to_string(zf.num_classes) + " provenance=" + zf.provenance + "\n";
  for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
  out += '\n';
  for (std::size_t i = 0; i < zf.values.rows(); ++i) {
    const auto row = zf.values.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += text::format_double(row[k]);
    }
    out += '\n';
  }
  text::write_file(path, out);
}

EnhancedAttributeMatrix load_attributes(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path, false);
  require(lines.size() >= 2, ErrorCode::SchemaMismatch, path.string() + ": missing header");
  const std::string prefix = "#" + std::string(kAttributeSchemaVersion) + " c=";
  require(lines[0].text.rfind(prefix, 0) == 0, ErrorCode::SchemaMismatch,
          path.string() + ": unknown attribute schema version");
  const std::string rest = lines[0].text.substr(prefix.size());
  const auto space = rest.find(' ');
  const std::size_t c = text::parse_index(rest.substr(0, space), path.string() + " header");
  std::string provenance = "row_norm_adjacency";
  if (space != std::string::npos) {
    const std::string tag = rest.substr(space + 1);
    if (tag.rfind("provenance=", 0) == 0) provenance = tag.substr(11);
  }
  const AttributeSchema schema(c);
  const auto expected = schema.enhanced_names();
  const auto header = text::split(lines[1].text, ',');
  require(header.size() == expected.size() &&
              std::equal(header.begin(), header.end(), expected.begin()),
          ErrorCode::SchemaMismatch, path.string() + ": column names differ from the schema");
  const std::size_t width = expected.size();
  std::vector<double> values;
  values.reserve((lines.size() - 2) * width);
  for (std::size_t r = 2; r < lines.size(); ++r) {
    const std::string at = path.filename().string() + " line " + std::to_string(lines[r].number);
    const auto parts = text::split(lines[r].text, ',');
    require(parts.size() == width, ErrorCode::ParseError, at + ": wrong field count");
    for (const auto part : parts) values.push_back(text::parse_double(part, at));
  }
  return {DenseMatrix(lines.size() - 2, width, std::move(values)), c, provenance};
}

}  // namespace graphrank
