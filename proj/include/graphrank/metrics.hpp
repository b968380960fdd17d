#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace graphrank {

/// Failing node ids of the unlabeled pool.
class FailureSet {
 public:
  FailureSet() = default;
  FailureSet(std::span<const std::size_t> pool, std::span<const std::uint8_t> failures);
  explicit FailureSet(std::vector<std::size_t> failing_ids);

  std::size_t total() const noexcept { return ids_.size(); }
  bool contains(std::size_t id) const;
  std::span<const std::size_t> ids() const noexcept { return ids_; }

 private:
  std::vector<std::size_t> ids_;  // sorted, unique
};

/// Detected failures among `selected`.
std::size_t detected_failures(std::span<const std::size_t> selected, const FailureSet& failures);

/// DF / min(b, TF); nullopt when TF = 0. Throws InvalidParameter unless |selected| = b.
std::optional<double> trc(std::span<const std::size_t> selected, const FailureSet& failures,
                          std::size_t budget);

/// round(i·TF/steps) for i = 1..steps, deduplicated ascending. Throws TooFewFailures.
std::vector<std::size_t> budget_grid(std::size_t total_failures, std::size_t steps = 10);

/// Arithmetic mean; throws EmptyGrid.
double atrc(std::span<const double> per_budget_trcs);

struct StatsResult {
  double p_value = 1.0;
  double effect_size = 0.0;
  double u_statistic = 0.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

enum class MannWhitneyMethod { Auto, Exact, Normal };

/// Largest group size for which Auto uses exact enumeration.
inline constexpr std::size_t kExactMannWhitneyMax = 8;

/// Mann-Whitney U statistic of `a` (midranks for ties).
double mann_whitney_statistic(std::span<const double> a, std::span<const double> b);

/// Two-sided p. Exact: every split of the pooled values into groups of the
/// original sizes, counting those at least as far from nm/2 as observed.
/// Normal: tie-corrected variance with continuity correction.
StatsResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           MannWhitneyMethod method = MannWhitneyMethod::Auto);

/// (mean a − mean b) / pooled sd with n−1 denominators. Throws ZeroVariance, InsufficientData.
double cohens_d(std::span<const double> a, std::span<const double> b);

struct HistogramPair {
  std::vector<double> bin_lo;
  std::vector<double> bin_hi;
  std::vector<double> failure_prop;
  std::vector<double> correct_prop;
};

/// Proportion of each group's values per equal-width bin over [min, max] of
/// all values; a constant metric lands entirely in the first bin.
HistogramPair attribute_distributions(std::span<const double> metric,
                                      std::span<const std::uint8_t> is_failure,
                                      std::size_t bins = 20);

double mean(std::span<const double> values);
/// Sample standard deviation (n−1); 0 for fewer than two values.
double sample_sd(std::span<const double> values);

}  // namespace graphrank
