#pragma once

#include <cstddef>
#include <cstdint>

#include "graphrank/graph.hpp"

namespace graphrank {

/// Planted-partition stochastic block model with Gaussian class-mean features.
struct SbmParams {
  std::size_t n = 2000;
  std::size_t num_classes = 5;
  double p_in = 0.01;
  double p_out = 0.001;
  std::size_t feature_dim = 16;
  /// Distance of each class mean from the origin along its own axis.
  double signal = 1.0;
  /// Per-coordinate feature standard deviation.
  double noise = 1.0;
  std::uint64_t seed = 0;
  double train_fraction = 0.4;
  double validation_fraction = 0.3;

  /// p_in < p_out: adjacent nodes tend to have different labels.
  bool heterophilic() const noexcept { return p_in < p_out; }

  /// Throws InvalidParameter naming the offending field.
  void validate() const;
};

/// Labels are assigned round-robin, every unordered pair is an independent
/// Bernoulli(p_in | p_out) edge, features are N(signal·e_(class mod d), noise²),
/// and splits come from a seeded shuffle. Deterministic in `params`.
Graph generate_sbm(const SbmParams& params);

}  // namespace graphrank
