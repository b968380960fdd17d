#include <doctest.h>

#include <cmath>

#include "graphrank/error.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/kernels.hpp"
#include "graphrank/random.hpp"
#include "support.hpp"

using namespace graphrank;

TEST_CASE("spmm") {
  Rng rng(1);
  const DenseMatrix m = testing::random_matrix(4, 3, rng);
  CHECK(spmm(SparseRowMatrix::identity(4), m) == m);

  const SparseRowMatrix a = row_norm_adjacency(testing::path3());
  const DenseMatrix out = spmm(a, DenseMatrix{{1}, {2}, {3}});
  CHECK(std::abs(out(0, 0) - 1.5) < 1e-15);
  CHECK(std::abs(out(1, 0) - 2.0) < 1e-15);
  CHECK(std::abs(out(2, 0) - 2.5) < 1e-15);

  const DenseMatrix ones = spmm(a, DenseMatrix(3, 1, 1.0));
  for (double v : ones.values()) CHECK(std::abs(v - 1.0) < 1e-15);

  CHECK_THROWS_AS(spmm(a, DenseMatrix(4, 1)), Error);
}

TEST_CASE("matmul variants agree with transposes") {
  Rng rng(2);
  const DenseMatrix a = testing::random_matrix(3, 4, rng);
  const DenseMatrix b = testing::random_matrix(3, 5, rng);
  const DenseMatrix c = testing::random_matrix(5, 4, rng);
  CHECK(matmul_tn(a, b) == matmul(a.transposed(), b));
  CHECK(matmul_nt(a, c) == matmul(a, c.transposed()));
  CHECK_THROWS_AS(matmul(a, b), Error);
  const DenseMatrix i = matmul(DenseMatrix{{1, 2}}, DenseMatrix{{3}, {4}});
  CHECK(i(0, 0) == 11.0);
}

TEST_CASE("activations") {
  const DenseMatrix r = relu(DenseMatrix{{-1, 2}});
  CHECK(r == DenseMatrix{{0, 2}});

  const DenseMatrix s = softmax_rows(DenseMatrix{{0, 0}});
  CHECK(s(0, 0) == 0.5);
  CHECK(s(0, 1) == 0.5);

  const DenseMatrix big = softmax_rows(DenseMatrix{{1000, 0}});
  CHECK(big(0, 0) == doctest::Approx(1.0));
  CHECK(big(0, 1) < 1e-300);
  big.check_finite();

  const DenseMatrix b = add_bias(DenseMatrix{{1, 1}, {2, 2}}, std::vector<double>{0.5, -1});
  CHECK(b == DenseMatrix{{1.5, 0}, {2.5, 1}});
  CHECK(column_sums(b) == std::vector<double>{4.0, 1.0});

  Rng rng(3);
  const DenseMatrix p = softmax_rows(testing::random_matrix(10, 6, rng, 5.0));
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double sum = 0.0;
    for (double v : p.row(i)) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("dense matrices reject non-finite values") {
  CHECK_THROWS_AS(DenseMatrix(1, 2, std::vector<double>{1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(DenseMatrix(1, 2, std::vector<double>{1.0}), Error);
}

TEST_CASE("cross entropy values") {
  const std::vector<std::size_t> all{0, 1};
  const DenseMatrix onehot{{1, 0}, {0, 1}};
  CHECK(cross_entropy(onehot, std::vector<int>{0, 1}, all).loss == 0.0);

  const DenseMatrix uniform(2, 4, 0.25);
  CHECK(std::abs(cross_entropy(uniform, std::vector<int>{0, 3}, all).loss - std::log(4.0)) < 1e-12);

  const std::vector<std::size_t> none;
  CHECK_THROWS_AS(cross_entropy(uniform, std::vector<int>{0, 3}, none), Error);
}

TEST_CASE("cross entropy gradient matches finite differences") {
  Rng rng(4);
  DenseMatrix logits = testing::random_matrix(5, 3, rng);
  const std::vector<int> labels{0, 2, 1, 1, 0};
  const std::vector<std::size_t> mask{0, 2, 3};
  const CrossEntropyResult analytic = cross_entropy(softmax_rows(logits), labels, mask);
  const DenseMatrix numeric = testing::numeric_gradient(
      logits, [&] { return cross_entropy(softmax_rows(logits), labels, mask).loss; });
  CHECK(testing::max_relative_error(analytic.grad_logits.values(), numeric.values()) < 1e-4);
  for (double v : analytic.grad_logits.row(1)) CHECK(v == 0.0);
  for (double v : analytic.grad_logits.row(4)) CHECK(v == 0.0);
}

TEST_CASE("relu and spmm backward match finite differences") {
  Rng rng(5);
  const SparseRowMatrix a = sym_norm_adjacency(testing::make_graph(6, {{0, 1}, {1, 2}, {3, 4}, {2, 5}}));
  DenseMatrix x = testing::random_matrix(6, 3, rng);
  const DenseMatrix weights = testing::random_matrix(6, 3, rng);
  auto f = [&] {
    const DenseMatrix h = relu(spmm(a, x));
    double acc = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) acc += h.values()[k] * weights.values()[k];
    return acc;
  };
  // d/dx Σ W ⊙ relu(A x) = Aᵀ (W ⊙ relu'(A x)); Â is symmetric.
  const DenseMatrix pre = spmm(a, x);
  const DenseMatrix analytic = spmm(a, relu_backward(weights, pre));
  const DenseMatrix numeric = testing::numeric_gradient(x, f);
  CHECK(testing::max_relative_error(analytic.values(), numeric.values()) < 1e-4);
}

TEST_CASE("adam") {
  DenseMatrix param{{1.0, -2.0}};
  AdamState state(1, 2, 0.1);
  adam_step(state, param, DenseMatrix(1, 2, 0.0));
  CHECK(param == DenseMatrix{{1.0, -2.0}});

  DenseMatrix p{{0.0}};
  AdamState s(1, 1, 0.1);
  adam_step(s, p, DenseMatrix{{1.0}});
  CHECK(std::abs(p(0, 0) + 0.1) < 1e-6);

  auto run = [] {
    Rng rng(9);
    DenseMatrix w = testing::random_matrix(3, 3, rng);
    AdamState st(3, 3, 0.01);
    for (int i = 0; i < 20; ++i) adam_step(st, w, testing::random_matrix(3, 3, rng));
    return w;
  };
  CHECK(run() == run());
  CHECK_THROWS_AS(adam_step(s, p, DenseMatrix(2, 1)), Error);
}

TEST_CASE("dropout masks") {
  Rng rng(6);
  const DropoutMask zero = sample_dropout_mask(4, 4, 0.0, rng);
  for (double v : zero.values.values()) CHECK(v == 1.0);

  Rng big(7);
  const DropoutMask half = sample_dropout_mask(1000, 1000, 0.5, big);
  std::size_t zeros = 0;
  for (double v : half.values.values()) {
    CHECK((v == 0.0 || v == 2.0));
    zeros += v == 0.0;
  }
  CHECK(std::abs(static_cast<double>(zeros) / 1e6 - 0.5) < 0.01);

  Rng r1(8), r2(8);
  CHECK(sample_dropout_mask(5, 5, 0.3, r1).values == sample_dropout_mask(5, 5, 0.3, r2).values);

  try {
    sample_dropout_mask(2, 2, 1.0, rng);
    FAIL("expected InvalidRate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidRate);
  }
}
