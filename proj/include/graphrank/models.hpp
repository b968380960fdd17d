#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "graphrank/dense.hpp"
#include "graphrank/graph.hpp"
#include "graphrank/sparse.hpp"

namespace graphrank {

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  std::size_t hidden = 16;
  double weight_decay = 5e-4;
  /// Inverted dropout on the hidden layer during training.
  double dropout = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class PredictionSource { GcnDeterministic, GcnMcDropout, Mlp };

std::string_view to_string(PredictionSource source);
PredictionSource parse_prediction_source(std::string_view text);

/// Row-stochastic class distributions with their argmax labels.
struct PredictionBundle {
  DenseMatrix probs;
  std::vector<int> predicted;
  PredictionSource source = PredictionSource::GcnDeterministic;

  std::size_t num_nodes() const noexcept { return probs.rows(); }
  std::size_t num_classes() const noexcept { return probs.cols(); }

  bool operator==(const PredictionBundle&) const = default;
};

/// Argmax per row, ties to the lowest class index. Throws NotADistribution
/// if a row does not sum to 1 within 1e-9.
PredictionBundle make_bundle(DenseMatrix probs, PredictionSource source);

/// Two-layer GCN without biases: logits = Â · relu(Â X W1) · W2.
struct GcnModel {
  DenseMatrix w1;  // d x h
  DenseMatrix w2;  // h x c
  TrainConfig config;
  /// Training loss before each epoch's update.
  std::vector<double> loss_history;

  std::size_t input_dim() const noexcept { return w1.rows(); }
  std::size_t hidden_dim() const noexcept { return w1.cols(); }
  std::size_t num_classes() const noexcept { return w2.cols(); }
};

/// Two-layer perceptron d -> h -> c with biases; never reads adjacency.
struct MlpModel {
  DenseMatrix w1;
  std::vector<double> b1;
  DenseMatrix w2;
  std::vector<double> b2;
  TrainConfig config;
  std::vector<double> loss_history;

  std::size_t input_dim() const noexcept { return w1.rows(); }
  std::size_t num_classes() const noexcept { return w2.cols(); }
};

struct GcnGradients {
  double loss = 0.0;
  DenseMatrix w1;
  DenseMatrix w2;
};

/// Loss (cross-entropy over `supervised` + weight_decay/2 · ‖W‖²) and its
/// gradient. `ax` is Â·X; `hidden_mask`, when given, multiplies relu(Â X W1)
/// element-wise before the second propagation.
GcnGradients gcn_loss_and_gradients(const DenseMatrix& w1, const DenseMatrix& w2,
                                    const SparseRowMatrix& a_hat, const DenseMatrix& ax,
                                    std::span<const int> labels,
                                    std::span<const std::size_t> supervised,
                                    double weight_decay, const DenseMatrix* hidden_mask);

struct MlpGradients {
  double loss = 0.0;
  DenseMatrix w1;
  std::vector<double> b1;
  DenseMatrix w2;
  std::vector<double> b2;
};

/// Same loss shape as the GCN over the rows of `x` (one row per supervised node).
MlpGradients mlp_loss_and_gradients(const MlpModel& model, const DenseMatrix& x,
                                    std::span<const int> labels, double weight_decay,
                                    const DenseMatrix* hidden_mask);

/// Trains on the train split (or on `train_nodes` when non-empty) with Adam.
/// Throws DivergedTraining on a non-finite loss.
GcnModel train_gcn(const Graph& g, const TrainConfig& cfg,
                   std::span<const std::size_t> train_nodes = {});

PredictionBundle gcn_forward_deterministic(const GcnModel& model, const Graph& g);
/// relu(Â X W1), the first-layer node embeddings.
DenseMatrix gcn_hidden_embeddings(const GcnModel& model, const Graph& g);

enum class McAverage {
  /// softmax of the mean logits.
  Logits,
  /// mean of the per-pass softmax outputs.
  Probabilities,
};

struct McDropoutConfig {
  int passes = 10;
  double rate = 0.5;
  McAverage average = McAverage::Logits;
};

/// `passes` stochastic forwards, each with a fresh inverted-dropout mask on the
/// hidden embedding; pass p draws from stream mix_seed(seed, p).
PredictionBundle gcn_mc_dropout(const GcnModel& model, const Graph& g, const McDropoutConfig& mc,
                                std::uint64_t seed);

/// Trains on features of the train and validation splits.
MlpModel train_mlp(const Graph& g, const TrainConfig& cfg);
PredictionBundle mlp_forward(const MlpModel& model, const DenseMatrix& x);

/// 1 where predicted != label.
std::vector<std::uint8_t> classify_failures(const PredictionBundle& bundle, const Graph& g);

/// Accuracy of `bundle` over `nodes`.
double accuracy(const PredictionBundle& bundle, const Graph& g, std::span<const std::size_t> nodes);

// Versioned JSON checkpoints; doubles are written in shortest round-trip form.
void save_checkpoint(const GcnModel& model, const std::filesystem::path& path);
void save_checkpoint(const MlpModel& model, const std::filesystem::path& path);
GcnModel load_gcn_checkpoint(const std::filesystem::path& path);
MlpModel load_mlp_checkpoint(const std::filesystem::path& path);

/// CSV `node,predicted,p0..p{c-1}` preceded by a `#source=<tag>` line.
void save_predictions(const PredictionBundle& bundle, const std::filesystem::path& path);
PredictionBundle load_predictions(const std::filesystem::path& path);

}  // namespace graphrank
