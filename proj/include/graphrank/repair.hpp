#pragma once

#include <cstddef>
#include <span>

#include "graphrank/graph.hpp"
#include "graphrank/models.hpp"

namespace graphrank {

struct RepairResult {
  double baseline_accuracy = 0.0;
  double retrained_accuracy = 0.0;
  /// retrained − baseline validation accuracy, as a fraction.
  double delta = 0.0;
  std::size_t added = 0;
};

/// Retrains the GCN from scratch on train ∪ `selection` (with the same config
/// and seed as the baseline) and compares validation accuracy.
/// Throws DuplicateSelection, or InvalidParameter for ids outside the test split.
RepairResult repair_retrain(const Graph& g, std::span<const std::size_t> selection,
                            const TrainConfig& cfg);

}  // namespace graphrank
