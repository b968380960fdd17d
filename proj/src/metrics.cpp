#include "graphrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

FailureSet::FailureSet(std::span<const std::size_t> pool, std::span<const std::uint8_t> failures) {
  for (const std::size_t id : pool) {
    require(id < failures.size(), ErrorCode::InvalidParameter, "pool id beyond failure vector");
    if (failures[id]) ids_.push_back(id);
  }
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

FailureSet::FailureSet(std::vector<std::size_t> failing_ids) : ids_(std::move(failing_ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool FailureSet::contains(std::size_t id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::size_t detected_failures(std::span<const std::size_t> selected, const FailureSet& failures) {
  std::size_t df = 0;
  for (const std::size_t id : selected) df += failures.contains(id) ? 1 : 0;
  return df;
}

std::optional<double> trc(std::span<const std::size_t> selected, const FailureSet& failures,
                          std::size_t budget) {
  require(selected.size() == budget, ErrorCode::InvalidParameter,
          "selected " + std::to_string(selected.size()) + " nodes for budget " +
              std::to_string(budget));
  if (failures.total() == 0) return std::nullopt;
  require(budget >= 1, ErrorCode::InvalidParameter, "budget must be >= 1");
  const double df = static_cast<double>(detected_failures(selected, failures));
  return df / static_cast<double>(std::min(budget, failures.total()));
}

std::vector<std::size_t> budget_grid(std::size_t total_failures, std::size_t steps) {
  require(steps >= 1, ErrorCode::InvalidParameter, "steps must be >= 1");
  require(total_failures >= steps, ErrorCode::TooFewFailures,
          std::to_string(total_failures) + " failures for a " + std::to_string(steps) +
              "-point budget grid");
  std::vector<std::size_t> grid;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double exact = static_cast<double>(i) * static_cast<double>(total_failures) /
                         static_cast<double>(steps);
    grid.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(exact))));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double atrc(std::span<const double> per_budget_trcs) {
  require(!per_budget_trcs.empty(), ErrorCode::EmptyGrid, "no budgets");
  return mean(per_budget_trcs);
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

/// Midranks (1-based) of `pooled`.
std::vector<double> midranks(std::span<const double> pooled) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> ranks(pooled.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace

double mann_whitney_statistic(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::EmptyGroup, "Mann-Whitney needs two non-empty groups");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum += ranks[i];
  const auto n = static_cast<double>(a.size());
  return rank_sum - n * (n + 1.0) / 2.0;
}

StatsResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           MannWhitneyMethod method) {
  require(!a.empty() && !b.empty(), ErrorCode::EmptyGroup, "Mann-Whitney needs two non-empty groups");
  StatsResult result;
  result.size_a = a.size();
  result.size_b = b.size();
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const double centre = static_cast<double>(n * m) / 2.0;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) rank_sum += ranks[i];
  const double u = rank_sum - static_cast<double>(n * (n + 1)) / 2.0;
  result.u_statistic = u;
  const double observed = std::abs(u - centre);

  const bool exact = method == MannWhitneyMethod::Exact ||
                     (method == MannWhitneyMethod::Auto && n <= kExactMannWhitneyMax &&
                      m <= kExactMannWhitneyMax);
  if (exact) {
    const std::size_t total = n + m;
    require(total <= 24, ErrorCode::InvalidParameter, "exact Mann-Whitney limited to 24 values");
    // Rank sums over all C(n+m, n) index subsets; ranks are fixed by the pooled values.
    std::size_t hits = 0;
    std::size_t arrangements = 0;
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    const double offset = static_cast<double>(n * (n + 1)) / 2.0;
    const double slack = 1e-9 * std::max(1.0, centre);
    while (true) {
      double s = 0.0;
      for (const std::size_t idx : pick) s += ranks[idx];
      ++arrangements;
      if (std::abs(s - offset - centre) >= observed - slack) ++hits;
      // Next combination in lexicographic order.
      std::size_t k = n;
      while (k > 0 && pick[k - 1] == total - n + k - 1) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    result.p_value = static_cast<double>(hits) / static_cast<double>(arrangements);
    return result;
  }

  // Tie correction: Σ(t³ − t) over tie groups.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  const double big_n = nd + md;
  const double variance = nd * md / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
  if (!(variance > 0.0)) {
    result.p_value = 1.0;
    return result;
  }
  const double z = std::max(0.0, observed - 0.5) / std::sqrt(variance);
  result.p_value = std::min(1.0, normal_two_sided(z));
  return result;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  require(a.size() >= 2 && b.size() >= 2, ErrorCode::InsufficientData,
          "Cohen's d needs at least two values per group");
  const double ma = mean(a);
  const double mb = mean(b);
  const double sa = sample_sd(a);
  const double sb = sample_sd(b);
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double pooled =
      std::sqrt(((na - 1.0) * sa * sa + (nb - 1.0) * sb * sb) / (na + nb - 2.0));
  require(pooled > 0.0, ErrorCode::ZeroVariance, "both groups are constant");
  return (ma - mb) / pooled;
}

HistogramPair attribute_distributions(std::span<const double> metric,
                                      std::span<const std::uint8_t> is_failure, std::size_t bins) {
  require(metric.size() == is_failure.size(), ErrorCode::ShapeMismatch, "metric/failure length");
  require(bins >= 1, ErrorCode::InvalidParameter, "bins must be >= 1");
  HistogramPair out;
  out.bin_lo.resize(bins);
  out.bin_hi.resize(bins);
  out.failure_prop.assign(bins, 0.0);
  out.correct_prop.assign(bins, 0.0);
  if (metric.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(metric.begin(), metric.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out.bin_lo[k] = lo + width * static_cast<double>(k);
    out.bin_hi[k] = k + 1 == bins ? hi : lo + width * static_cast<double>(k + 1);
  }
  std::size_t failures = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = std::min(bins - 1, static_cast<std::size_t>((metric[i] - lo) / width));
    }
    if (is_failure[i]) {
      out.failure_prop[bin] += 1.0;
      ++failures;
    } else {
      out.correct_prop[bin] += 1.0;
      ++correct;
    }
  }
  for (std::size_t k = 0; k < bins; ++k) {
    if (failures) out.failure_prop[k] /= static_cast<double>(failures);
    if (correct) out.correct_prop[k] /= static_cast<double>(correct);
  }
  return out;
}

}  // namespace graphrank
