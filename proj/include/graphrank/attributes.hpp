#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/models.hpp"
#include "graphrank/sparse.hpp"

namespace graphrank {

/// −Σ p log p (natural log); zero-probability terms contribute 0.
/// Throws NotADistribution for negative entries or a sum off 1 by more than 1e-6.
double entropy(std::span<const double> dist);
/// 1 − Σ p².
double gini(std::span<const double> dist);

/// Column groups of Z₁, in their frozen order.
enum class ColumnGroup { DetProbs, DetEntropy, DetGini, ProbEntropy, MlpProbs, MlpEntropy, DegreeNorm };

inline constexpr std::string_view kAttributeSchemaVersion = "graphrank-attributes/v1";

/// Layout of Z₁ for `num_classes` classes: d₁ = 2c + 5.
class AttributeSchema {
 public:
  explicit AttributeSchema(std::size_t num_classes) : num_classes_(num_classes) {}

  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t width() const noexcept { return 2 * num_classes_ + 5; }

  /// Column indices of `group` within Z₁.
  std::vector<std::size_t> columns(ColumnGroup group) const;
  std::vector<std::size_t> columns(std::span<const ColumnGroup> groups) const;

  /// det_p0.., det_entropy, det_gini, prob_entropy, mlp_q0.., mlp_entropy, degree_norm
  std::vector<std::string> names() const;
  /// Z_f names: Z₁ names followed by the same names prefixed with "agg_".
  std::vector<std::string> enhanced_names() const;

 private:
  std::size_t num_classes_;
};

/// Z₁.
struct AttributeMatrix {
  DenseMatrix values;
  std::size_t num_classes = 0;

  AttributeSchema schema() const { return AttributeSchema(num_classes); }
};

/// Z_f = [Z₁ | A′Z₁].
struct EnhancedAttributeMatrix {
  DenseMatrix values;
  std::size_t num_classes = 0;
  std::string provenance = "row_norm_adjacency";

  AttributeSchema schema() const { return AttributeSchema(num_classes); }
  std::size_t base_width() const { return schema().width(); }
};

/// [p_1..p_c, entropy, gini] per node; requires a GcnDeterministic bundle.
DenseMatrix deterministic_output_attrs(const PredictionBundle& bundle);
/// entropy(AveO) per node; requires a GcnMcDropout bundle.
DenseMatrix probabilistic_output_attrs(const PredictionBundle& aveo);
/// [q_1..q_c, entropy(q)] per node; requires an Mlp bundle.
DenseMatrix graph_node_attrs(const PredictionBundle& mlp_bundle);
/// Min-max normalized degree; all-equal degrees map to 0.
DenseMatrix degree_attrs(const Graph& g);

/// Concatenates the four blocks in schema order; throws RowCountMismatch or SchemaMismatch.
AttributeMatrix assemble_z1(const DenseMatrix& det, const DenseMatrix& prob, const DenseMatrix& mlp,
                            const DenseMatrix& deg);

/// One hop of neighbor averaging with a row-stochastic, self-looped A′.
EnhancedAttributeMatrix enhance(const AttributeMatrix& z1, const SparseRowMatrix& a_prime);

/// Σ_{j∈N(i)} failures[j] / deg(i); isolated nodes get 0.
std::vector<double> neighbor_failure_rate(const Graph& g, std::span<const std::uint8_t> failures);

/// Version line, header of column names, then one CSV row per node.
void save_attributes(const EnhancedAttributeMatrix& zf, const std::filesystem::path& path);
/// Throws SchemaMismatch if the version or column names differ from the frozen schema.
EnhancedAttributeMatrix load_attributes(const std::filesystem::path& path);

}  // namespace graphrank
