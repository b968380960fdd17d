#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/random.hpp"

namespace testing {

using graphrank::DenseMatrix;
using graphrank::Edge;
using graphrank::Graph;
using graphrank::Split;

/// Splits cycle train, val, test so every split is non-empty for n >= 3.
inline std::vector<Split> cyclic_splits(std::size_t n) {
  std::vector<Split> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Split>(i % 3);
  return out;
}

inline Graph make_graph(std::size_t n, const std::vector<Edge>& edges, std::size_t c = 2,
                        std::size_t d = 2) {
  DenseMatrix x(n, d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i % c);
    for (std::size_t j = 0; j < d; ++j) x(i, j) = static_cast<double>(i + j);
  }
  return graphrank::build_graph(edges, n, std::move(x), std::move(labels), c, cyclic_splits(n));
}

inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, graphrank::Rng& rng,
                                 double scale = 1.0) {
  DenseMatrix m(rows, cols);
  for (double& v : m.values()) v = scale * rng.normal();
  return m;
}

/// Central difference of `f` with respect to every entry of `param`.
inline DenseMatrix numeric_gradient(DenseMatrix& param, const std::function<double()>& f,
                                    double h = 1e-6) {
  DenseMatrix grad(param.rows(), param.cols());
  for (std::size_t k = 0; k < param.size(); ++k) {
    const double saved = param.values()[k];
    param.values()[k] = saved + h;
    const double up = f();
    param.values()[k] = saved - h;
    const double down = f();
    param.values()[k] = saved;
    grad.values()[k] = (up - down) / (2.0 * h);
  }
  return grad;
}

/// max |a − b| / max(1e-8, |a| + |b|) over matched entries; entries with both
/// magnitudes below `floor` are skipped since their relative error is noise.
inline double max_relative_error(std::span<const double> a, std::span<const double> b,
                                 double floor = 1e-7) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double scale = std::abs(a[k]) + std::abs(b[k]);
    if (scale < floor) continue;
    worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

}  // namespace testing
