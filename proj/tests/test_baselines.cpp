#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "graphrank/attributes.hpp"
#include "graphrank/baselines.hpp"
#include "graphrank/error.hpp"
#include "graphrank/random.hpp"
#include "graphrank/sbm.hpp"
#include "support.hpp"

using namespace graphrank;

namespace {

PredictionBundle bundle_of(const std::vector<std::vector<double>>& rows,
                           PredictionSource source = PredictionSource::GcnDeterministic) {
  DenseMatrix probs(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) probs(i, j) = rows[i][j];
  return make_bundle(std::move(probs), source);
}

PredictionBundle random_bundle(std::size_t n, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix probs(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) total += probs(i, j) = std::exp(2.0 * rng.normal());
    for (std::size_t j = 0; j < c; ++j) probs(i, j) /= total;
  }
  return make_bundle(std::move(probs), PredictionSource::GcnDeterministic);
}

std::vector<std::size_t> iota_ids(std::size_t n, std::size_t from = 0) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), from);
  return ids;
}

/// Independent reference: every (score, id) pair sorted by the tie rule.
std::vector<std::size_t> oracle_order(std::span<const std::size_t> ids, std::span<const double> s) {
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t k = 0; k < ids.size(); ++k) keyed.emplace_back(-s[k], ids[k]);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> out;
  for (const auto& [neg, id] : keyed) out.push_back(id);
  return out;
}

double ref_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

void check_permutation(const Ranking& r, std::span<const std::size_t> pool) {
  std::vector<std::size_t> a = r.ids;
  std::vector<std::size_t> b(pool.begin(), pool.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  for (std::size_t k = 1; k < r.size(); ++k) CHECK(r.scores[k] <= r.scores[k - 1]);
}

}  // namespace

TEST_CASE("random ranking") {
  const auto pool = iota_ids(100, 7);
  const Ranking a = rank_random(pool, 42);
  CHECK(a.ids == rank_random(pool, 42).ids);
  CHECK(a.ids != rank_random(pool, 43).ids);
  check_permutation(a, pool);
  CHECK_THROWS_AS(rank_random(std::vector<std::size_t>{}, 1), Error);
}

TEST_CASE("entropy ranking") {
  const auto b = bundle_of({{1.0, 0.0, 0.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.3, 0.2}});
  const auto ids = iota_ids(3);
  CHECK(rank_entropy(b, ids).ids == std::vector<std::size_t>{1, 2, 0});

  const auto same = bundle_of({{0.6, 0.4}, {0.6, 0.4}, {0.6, 0.4}, {0.6, 0.4}});
  const std::vector<std::size_t> shuffled{3, 0, 2, 1};
  CHECK(rank_entropy(same, shuffled).ids == iota_ids(4));

  const auto r20 = random_bundle(20, 4, 9);
  std::vector<double> ref;
  for (std::size_t i = 0; i < 20; ++i) ref.push_back(ref_entropy(r20.probs.row(i)));
  const auto ids20 = iota_ids(20);
  CHECK(rank_entropy(r20, ids20).ids == oracle_order(ids20, ref));
}

TEST_CASE("deepgini and margin ranking") {
  const auto b = bundle_of({{0.0, 1.0, 0.0}, {0.5, 0.3, 0.2}, {0.5, 0.5, 0.0}});
  const auto ids = iota_ids(3);
  const Ranking g = rank_deepgini(b, ids);
  CHECK(g.ids.back() == 0);
  CHECK(g.scores.back() == 0.0);
  CHECK(gini(b.probs.row(1)) == doctest::Approx(0.62).epsilon(1e-12));

  CHECK(margin_score(b.probs.row(0)) == -1.0);
  CHECK(margin_score(b.probs.row(2)) == 0.0);
  CHECK(margin_score(b.probs.row(1)) == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(rank_margin(b, ids).ids == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("binary uncertainty scores agree on order") {
  const auto b = random_bundle(60, 2, 3);
  const auto ids = iota_ids(60);
  const auto e = rank_entropy(b, ids).ids;
  CHECK(e == rank_deepgini(b, ids).ids);
  CHECK(e == rank_margin(b, ids).ids);
}

TEST_CASE("class relabeling leaves orders unchanged") {
  const auto b = random_bundle(40, 4, 5);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  DenseMatrix moved(40, 4);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 4; ++j) moved(i, perm[j]) = b.probs(i, j);
  const auto b2 = make_bundle(moved, PredictionSource::GcnDeterministic);
  const auto ids = iota_ids(40);
  CHECK(rank_entropy(b, ids).ids == rank_entropy(b2, ids).ids);
  CHECK(rank_deepgini(b, ids).ids == rank_deepgini(b2, ids).ids);
  CHECK(rank_margin(b, ids).ids == rank_margin(b2, ids).ids);
}

TEST_CASE("dropout ranking needs an MC bundle") {
  const auto b = random_bundle(10, 3, 1);
  CHECK_THROWS_AS(rank_dropout(b, iota_ids(10)), Error);
  PredictionBundle mc = b;
  mc.source = PredictionSource::GcnMcDropout;
  CHECK(rank_dropout(mc, iota_ids(10)).ids == rank_entropy(b, iota_ids(10)).ids);
}

TEST_CASE("datis extremes") {
  // Labelled nodes 0..2 all class 1; node 3 predicts onehot(1), node 4 onehot(0).
  DenseMatrix rep(5, 1);
  for (std::size_t i = 0; i < 5; ++i) rep(i, 0) = static_cast<double>(i);
  const auto b = bundle_of({{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 0}});
  const std::vector<std::size_t> lab{0, 1, 2};
  const std::vector<int> y{1, 1, 1};
  const Ranking r = rank_datis(rep, lab, y, b, std::vector<std::size_t>{3, 4}, 3);
  CHECK(r.ids == std::vector<std::size_t>{4, 3});
  CHECK(r.scores[0] == doctest::Approx(1.0));
  CHECK(r.scores[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(rank_datis(rep, lab, y, b, std::vector<std::size_t>{3}, 4), Error);
}

TEST_CASE("datis matches an exhaustive neighbor search") {
  Rng rng(17);
  const std::size_t n = 30, c = 3, k = 4;
  const DenseMatrix rep = testing::random_matrix(n, 3, rng);
  const auto b = random_bundle(n, c, 18);
  std::vector<std::size_t> lab, unl;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      lab.push_back(i);
      y.push_back(static_cast<int>(rng.below(c)));
    } else {
      unl.push_back(i);
    }
  }
  std::vector<double> ref;
  for (std::size_t u : unl) {
    // All labelled distances, fully sorted.
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t l = 0; l < lab.size(); ++l) {
      double sq = 0.0;
      for (std::size_t j = 0; j < 3; ++j) sq += std::pow(rep(u, j) - rep(lab[l], j), 2);
      d.emplace_back(std::sqrt(sq), l);
    }
    std::sort(d.begin(), d.end());
    std::vector<double> s(c, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      s[static_cast<std::size_t>(y[d[r].second])] += 1.0 / (1.0 + d[r].first);
      total += 1.0 / (1.0 + d[r].first);
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < c; ++j) dot += s[j] / total * b.probs(u, j);
    ref.push_back(1.0 - dot);
  }
  const Ranking r = rank_datis(rep, lab, y, b, unl, k);
  CHECK(r.ids == oracle_order(unl, ref));
  for (std::size_t q = 0; q < r.size(); ++q) {
    const auto at = std::find(unl.begin(), unl.end(), r.ids[q]) - unl.begin();
    CHECK(r.scores[q] == doctest::Approx(ref[static_cast<std::size_t>(at)]).epsilon(1e-12));
  }
}

TEST_CASE("nns on a path") {
  // 0 - 1 - 2 plus isolated node 3.
  const Graph g = testing::make_graph(4, {{0, 1}, {1, 2}});
  const auto b = bundle_of({{1.0, 0.0}, {0.5, 0.5}, {0.8, 0.2}, {0.7, 0.3}});
  const auto ids = iota_ids(4);
  const Ranking r = rank_nns(b, g, ids, 0.5);
  // p'0 = 0.5(1,0) + 0.5(0.5,0.5) = (0.75,0.25) → 0.375
  // p'1 = 0.5(0.5,0.5) + 0.5(0.9,0.1) = (0.7,0.3) → 0.42
  // p'2 = 0.5(0.8,0.2) + 0.5(0.5,0.5) = (0.65,0.35) → 0.455
  // p'3 = (0.7,0.3) → 0.42
  CHECK(r.ids == std::vector<std::size_t>{2, 1, 3, 0});
  CHECK(r.scores[0] == doctest::Approx(0.455).epsilon(1e-12));
  CHECK(r.scores[1] == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(r.scores[2] == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(r.scores[3] == doctest::Approx(0.375).epsilon(1e-12));

  const auto isolated = rank_nns(b, g, std::vector<std::size_t>{3}, 1.0);
  CHECK(isolated.scores[0] == doctest::Approx(gini(b.probs.row(3))));
  CHECK_THROWS_AS(rank_nns(b, g, ids, 1.5), Error);
}

TEST_CASE("nns without smoothing is deepgini") {
  Rng rng(2);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < 60; ++k) {
    const std::size_t u = rng.below(30), v = rng.below(30);
    if (u != v) edges.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const Graph g = testing::make_graph(30, edges, 3);
  const auto b = random_bundle(30, 3, 4);
  const auto ids = iota_ids(30);
  CHECK(rank_nns(b, g, ids, 0.0).ids == rank_deepgini(b, ids).ids);
  check_permutation(rank_nns(b, g, ids, 0.5), ids);
}

TEST_CASE("ranking files") {
  const auto dir = std::filesystem::temp_directory_path() / "graphrank_rankings";
  std::filesystem::create_directories(dir);
  const Ranking r = rank_entropy(random_bundle(25, 3, 6), iota_ids(25));
  save_ranking(r, dir / "mine.csv");
  const Ranking back = load_ranking(dir / "mine.csv");
  CHECK(back.method == "mine");
  CHECK(back.ids == r.ids);
  CHECK(back.scores == r.scores);

  const auto write = [&](const char* name, const char* body) {
    std::ofstream(dir / name) << body;
    return dir / name;
  };
  CHECK_THROWS_AS(load_ranking(write("rising.csv", "node_id,score\n1,0.2\n2,0.5\n")), Error);
  CHECK_THROWS_AS(load_ranking(write("dup.csv", "node_id,score\n1,0.5\n1,0.2\n")), Error);
  CHECK_THROWS_AS(load_ranking(write("header.csv", "id,score\n1,0.5\n")), Error);
  std::filesystem::remove_all(dir);
}

// Pinned MC-dropout ranking of a small seeded SBM. Set GRAPHRANK_UPDATE_GOLDEN=1
// to rewrite the file after an intentional numerical change.
TEST_CASE("golden dropout ranking on a 50-node graph") {
  SbmParams p;
  p.n = 50;
  p.num_classes = 3;
  p.p_in = 0.2;
  p.p_out = 0.02;
  p.feature_dim = 6;
  p.seed = 11;
  const Graph g = generate_sbm(p);
  TrainConfig tc;
  tc.epochs = 40;
  tc.seed = 12;
  const GcnModel model = train_gcn(g, tc);
  const PredictionBundle mc = gcn_mc_dropout(model, g, McDropoutConfig{}, 13);
  const auto pool = g.nodes_in(Split::Test);
  const Ranking r = rank_dropout(mc, pool);

  // Entropy of three rows recomputed from the averaged distributions.
  for (std::size_t q : {std::size_t{0}, r.size() / 2, r.size() - 1}) {
    CHECK(r.scores[q] == doctest::Approx(ref_entropy(mc.probs.row(r.ids[q]))).epsilon(1e-12));
  }
  const DenseMatrix prob = probabilistic_output_attrs(mc);
  for (std::size_t q = 0; q < r.size(); ++q) CHECK(prob(r.ids[q], 0) == doctest::Approx(r.scores[q]).epsilon(1e-12));

  const std::filesystem::path golden = std::filesystem::path(GRAPHRANK_GOLDEN_DIR) / "dropout_sbm50.csv";
  if (std::getenv("GRAPHRANK_UPDATE_GOLDEN")) save_ranking(r, golden);
  REQUIRE(std::filesystem::exists(golden));
  const Ranking pinned = load_ranking(golden);
  CHECK(pinned.ids == r.ids);
  REQUIRE(pinned.size() == r.size());
  for (std::size_t q = 0; q < r.size(); ++q) CHECK(pinned.scores[q] == doctest::Approx(r.scores[q]).epsilon(1e-9));
}
