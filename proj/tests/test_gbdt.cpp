#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphrank/error.hpp"
#include "graphrank/gbdt.hpp"
#include "graphrank/logistic.hpp"
#include "graphrank/random.hpp"
#include "support.hpp"

using namespace graphrank;

namespace {

struct Toy {
  DenseMatrix x;
  std::vector<int> y;
};

/// 200 points on [-1, 1); label 1 iff x >= 0.
Toy separable_1d() {
  Toy t{DenseMatrix(200, 1), std::vector<int>(200)};
  for (std::size_t i = 0; i < 200; ++i) {
    t.x(i, 0) = -1.0 + static_cast<double>(i) / 100.0;
    t.y[i] = t.x(i, 0) >= 0.0 ? 1 : 0;
  }
  return t;
}

Toy random_pool(std::uint64_t seed, std::size_t n = 150, std::size_t d = 5) {
  Rng rng(seed);
  Toy t{testing::random_matrix(n, d, rng), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double z = t.x(i, 0) - 0.5 * t.x(i, 1) * t.x(i, 2) + 0.8 * rng.normal();
    t.y[i] = z > 0.3 ? 1 : 0;
  }
  return t;
}

double training_accuracy(const Classifier& c, const Toy& t) {
  const auto s = c.score(t.x);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ok += (s[i] >= 0.5) == (t.y[i] == 1);
  return static_cast<double>(ok) / static_cast<double>(s.size());
}

}  // namespace

TEST_CASE("gbdt fits the separable toy") {
  const Toy t = separable_1d();
  const BoostedTrees m = train_boosted_trees(t.x, t.y, GbdtHyper{});
  CHECK(training_accuracy(m, t) == 1.0);
  for (const auto& tree : m.trees()) CHECK(tree.depth() <= 4);
}

TEST_CASE("gbdt hyperparameter defaults") {
  const GbdtHyper h;
  CHECK(h.num_trees == 100);
  CHECK(h.max_depth == 4);
  CHECK(h.shrinkage == 0.1);
  CHECK(h.lambda == 1.0);
  CHECK(h.min_child_weight == 1.0);
  GbdtHyper bad;
  bad.shrinkage = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("gbdt training loss never increases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Toy t = random_pool(seed);
    const BoostedTrees m = train_boosted_trees(t.x, t.y, GbdtHyper{});
    const auto h = m.loss_history();
    REQUIRE(h.size() >= 2);
    for (std::size_t r = 1; r < h.size(); ++r) CHECK(h[r] <= h[r - 1]);
  }
}

TEST_CASE("gbdt single-class pools give a constant low score") {
  const Toy t = random_pool(1);
  const std::vector<int> zeros(t.y.size(), 0);
  const BoostedTrees m = train_boosted_trees(t.x, zeros, GbdtHyper{});
  CHECK(m.trees().empty());
  CHECK(m.is_constant());
  for (double s : m.score(t.x)) {
    CHECK(s < 0.5);
    CHECK(std::abs(s - 0.01) < 1e-12);
  }
}

TEST_CASE("gbdt is deterministic and order invariant") {
  const Toy t = random_pool(2);
  GbdtTrainer trainer;
  const auto a = trainer.train(t.x, t.y, 7);
  const auto b = trainer.train(t.x, t.y, 7);
  CHECK(dynamic_cast<const BoostedTrees&>(*a) == dynamic_cast<const BoostedTrees&>(*b));

  std::vector<std::size_t> perm(t.y.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(3);
  rng.shuffle(std::span<std::size_t>(perm));
  std::vector<int> y2;
  for (std::size_t i : perm) y2.push_back(t.y[i]);
  const auto c = trainer.train(t.x.select_rows(perm), y2, 7);
  const Toy probe = random_pool(99, 50);
  CHECK(a->decision_function(probe.x) == c->decision_function(probe.x));
}

TEST_CASE("gbdt with duplicate rows and ties") {
  DenseMatrix x(40, 2);
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    x(i, 0) = static_cast<double>(i % 4);
    x(i, 1) = 1.0;
    y[i] = (i % 4 == 3 || i % 7 == 0) ? 1 : 0;
  }
  const BoostedTrees m = train_boosted_trees(x, y, GbdtHyper{});
  const auto s = m.score(x);
  for (std::size_t i = 4; i < 40; ++i) CHECK(s[i] == s[i % 4]);
}

TEST_CASE("scores lie in (0, 1) and follow a single split") {
  const BoostedTrees empty(2, 0.0, 0.1, {});
  for (double s : empty.score(DenseMatrix(3, 2))) CHECK(s == 0.5);

  const RegressionTree stump({TreeNode{0, 0.5, 1, 2, 0.0}, TreeNode{-1, 0, -1, -1, -1.0},
                              TreeNode{-1, 0, -1, -1, 1.0}});
  const BoostedTrees one(1, 0.0, 1.0, {stump});
  const auto s = one.score(DenseMatrix{{0.0}, {1.0}, {0.2}});
  CHECK(s[1] > s[0]);
  CHECK(s[0] == s[2]);
  CHECK_THROWS_AS(one.score(DenseMatrix(2, 3)), Error);

  const Toy t = random_pool(4);
  GbdtHyper big;
  big.shrinkage = 1.0;
  big.lambda = 1e-3;
  big.min_child_weight = 1e-3;
  for (double v : train_boosted_trees(t.x, t.y, big).score(t.x)) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("gbdt needs two rows") {
  CHECK_THROWS_AS(train_boosted_trees(DenseMatrix(1, 2), std::vector<int>{1}, GbdtHyper{}), Error);
}

TEST_CASE("logistic ranker") {
  const Toy t = separable_1d();
  LogisticTrainer trainer;
  CHECK(training_accuracy(*trainer.train(t.x, t.y, 0), t) == 1.0);

  LogisticHyper none;
  none.epochs = 0;
  const LogisticRegression flat = train_logistic(t.x, t.y, none);
  for (double s : flat.score(t.x)) CHECK(s == 0.5);
  CHECK(flat.is_constant());

  const std::unique_ptr<ClassifierTrainer> plug = std::make_unique<LogisticTrainer>();
  CHECK(plug->name() == "logistic");
  CHECK_THROWS_AS(plug->train(DenseMatrix(1, 1), std::vector<int>{0}, 0), Error);
}
