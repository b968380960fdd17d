#include "graphrank/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch,
          std::string(what) + ": " + shape(a) + " vs " + shape(b));
}

}  // namespace

DenseMatrix spmm(const SparseRowMatrix& s, const DenseMatrix& m) {
  require(s.cols() == m.rows(), ErrorCode::ShapeMismatch,
          "spmm: sparse has " + std::to_string(s.cols()) + " cols, dense " + shape(m));
  DenseMatrix out(s.rows(), m.cols());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    auto dst = out.row(r);
    const auto cols = s.row_cols(r);
    const auto vals = s.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto src = m.row(cols[k]);
      const double w = vals[k];
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += w * src[j];
    }
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matmul: " + shape(a) + " * " + shape(b));
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += aik * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch,
          "matmul_tn: " + shape(a) + "^T * " + shape(b));
  DenseMatrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const auto arow = a.row(k);
    const auto brow = b.row(k);
    for (std::size_t i = 0; i < arow.size(); ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      auto dst = out.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += aki * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.cols(), ErrorCode::ShapeMismatch,
          "matmul_nt: " + shape(a) + " * " + shape(b) + "^T");
  DenseMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto arow = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const auto brow = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < arow.size(); ++k) acc += arow[k] * brow[k];
      out(i, j) = acc;
    }
  }
  return out;
}

DenseMatrix add_bias(const DenseMatrix& m, std::span<const double> bias) {
  require(bias.size() == m.cols(), ErrorCode::ShapeMismatch, "add_bias width");
  DenseMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += bias[j];
  }
  return out;
}

DenseMatrix relu(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return out;
}

DenseMatrix relu_backward(const DenseMatrix& grad, const DenseMatrix& pre) {
  require_same_shape(grad, pre, "relu_backward");
  DenseMatrix out = grad;
  const auto p = pre.values();
  auto g = out.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(p[i] > 0.0)) g[i] = 0.0;
  }
  return out;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "hadamard");
  DenseMatrix out = a;
  auto o = out.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bv[i];
  return out;
}

DenseMatrix softmax_rows(const DenseMatrix& logits) {
  DenseMatrix out(logits.rows(), logits.cols());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    const auto src = logits.row(r);
    auto dst = out.row(r);
    if (src.empty()) continue;
    const double peak = *std::max_element(src.begin(), src.end());
    double total = 0.0;
    for (std::size_t j = 0; j < src.size(); ++j) {
      dst[j] = std::exp(src[j] - peak);
      total += dst[j];
    }
    for (double& v : dst) v /= total;
  }
  return out;
}

std::vector<double> column_sums(const DenseMatrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  }
  return out;
}

CrossEntropyResult cross_entropy(const DenseMatrix& probs, std::span<const int> labels,
                                 std::span<const std::size_t> supervised) {
  require(!supervised.empty(), ErrorCode::EmptyMask, "no supervised rows");
  require(labels.size() == probs.rows(), ErrorCode::ShapeMismatch, "labels length");
  CrossEntropyResult result{0.0, DenseMatrix(probs.rows(), probs.cols())};
  const double scale = 1.0 / static_cast<double>(supervised.size());
  for (const std::size_t i : supervised) {
    require(i < probs.rows(), ErrorCode::ShapeMismatch, "supervised index out of range");
    const int y = labels[i];
    require(y >= 0 && static_cast<std::size_t>(y) < probs.cols(), ErrorCode::LabelOutOfRange,
            "label " + std::to_string(y));
    const double p = std::max(probs(i, static_cast<std::size_t>(y)),
                              std::numeric_limits<double>::min());
    result.loss -= std::log(p) * scale;
    auto g = result.grad_logits.row(i);
    const auto pr = probs.row(i);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = pr[j] * scale;
    g[static_cast<std::size_t>(y)] -= scale;
  }
  return result;
}

void adam_step(AdamState& state, DenseMatrix& param, const DenseMatrix& grad) {
  require_same_shape(param, grad, "adam_step");
  require_same_shape(param, state.first_moment, "adam_step moments");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  auto p = param.values();
  const auto g = grad.values();
  auto m = state.first_moment.values();
  auto v = state.second_moment.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
    v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    p[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

DropoutMask sample_dropout_mask(std::size_t rows, std::size_t cols, double rate, Rng& rng) {
  require(rate >= 0.0 && rate < 1.0, ErrorCode::InvalidRate,
          "dropout rate " + std::to_string(rate) + " outside [0, 1)");
  DropoutMask mask{DenseMatrix(rows, cols, 1.0), rate};
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : mask.values.values()) v = rng.uniform() < rate ? 0.0 : keep_scale;
  return mask;
}

}  // namespace graphrank
