#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/random.hpp"
#include "graphrank/sparse.hpp"

namespace graphrank {

// All reductions run in ascending index order so results are bit-reproducible.

/// s · m. Per output row, contributions are summed in ascending column order of `s`.
DenseMatrix spmm(const SparseRowMatrix& s, const DenseMatrix& m);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// aᵀ · b without materializing the transpose.
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
/// a · bᵀ without materializing the transpose.
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix add_bias(const DenseMatrix& m, std::span<const double> bias);
DenseMatrix relu(const DenseMatrix& m);
/// Gradient through relu: grad where pre > 0, else 0.
DenseMatrix relu_backward(const DenseMatrix& grad, const DenseMatrix& pre);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
/// Row-wise softmax with max subtraction.
DenseMatrix softmax_rows(const DenseMatrix& logits);
/// Column sums, used for bias gradients.
std::vector<double> column_sums(const DenseMatrix& m);

struct CrossEntropyResult {
  double loss = 0.0;
  /// d loss / d logits, assuming `probs = softmax_rows(logits)`.
  DenseMatrix grad_logits;
};

/// Mean negative log-likelihood over `supervised` rows.
CrossEntropyResult cross_entropy(const DenseMatrix& probs, std::span<const int> labels,
                                 std::span<const std::size_t> supervised);

struct AdamState {
  DenseMatrix first_moment;
  DenseMatrix second_moment;
  long step = 0;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  AdamState() = default;
  AdamState(std::size_t rows, std::size_t cols, double lr)
      : first_moment(rows, cols), second_moment(rows, cols), learning_rate(lr) {}
};

/// Bias-corrected Adam update applied in place.
void adam_step(AdamState& state, DenseMatrix& param, const DenseMatrix& grad);

/// Inverted-dropout mask: entries are 0 with probability `rate`, else 1/(1-rate).
struct DropoutMask {
  DenseMatrix values;
  double rate = 0.0;
};

DropoutMask sample_dropout_mask(std::size_t rows, std::size_t cols, double rate, Rng& rng);

}  // namespace graphrank
