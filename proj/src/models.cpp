#include "graphrank/models.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "graphrank/error.hpp"
#include "graphrank/kernels.hpp"
#include "graphrank/random.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

constexpr std::uint64_t kInitStream = 10;
constexpr std::uint64_t kDropoutStream = 11;
constexpr double kRowSumTolerance = 1e-9;

DenseMatrix glorot(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  DenseMatrix w(fan_in, fan_out);
  for (double& v : w.values()) v = rng.uniform(-limit, limit);
  return w;
}

double squared_norm(const DenseMatrix& m) {
  double acc = 0.0;
  for (const double v : m.values()) acc += v * v;
  return acc;
}

void add_scaled(DenseMatrix& target, const DenseMatrix& source, double scale) {
  auto t = target.values();
  const auto s = source.values();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += scale * s[i];
}

void require_finite_loss(double loss, int epoch) {
  require(std::isfinite(loss), ErrorCode::DivergedTraining,
          "non-finite loss at epoch " + std::to_string(epoch));
}

// Biases are trained through one-row matrices so Adam can be shared.
DenseMatrix as_row(std::span<const double> v) {
  return DenseMatrix(1, v.size(), std::vector<double>(v.begin(), v.end()));
}

std::vector<std::size_t> labelled_nodes(const Graph& g) {
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    if (g.splits()[i] != Split::Test) nodes.push_back(i);
  }
  return nodes;
}

}  // namespace

void TrainConfig::validate() const {
  require(epochs >= 1, ErrorCode::InvalidParameter, "epochs must be >= 1");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), ErrorCode::InvalidParameter,
          "learning_rate must be positive");
  require(hidden >= 1, ErrorCode::InvalidParameter, "hidden must be >= 1");
  require(weight_decay >= 0.0, ErrorCode::InvalidParameter, "weight_decay must be >= 0");
  require(dropout >= 0.0 && dropout < 1.0, ErrorCode::InvalidRate, "dropout must lie in [0, 1)");
}

std::string_view to_string(PredictionSource source) {
  switch (source) {
    case PredictionSource::GcnDeterministic: return "gcn_det";
    case PredictionSource::GcnMcDropout: return "gcn_mc";
    case PredictionSource::Mlp: return "mlp";
  }
  return "?";
}

PredictionSource parse_prediction_source(std::string_view text) {
  if (text == "gcn_det") return PredictionSource::GcnDeterministic;
  if (text == "gcn_mc") return PredictionSource::GcnMcDropout;
  if (text == "mlp") return PredictionSource::Mlp;
  throw Error(ErrorCode::ParseError, "unknown prediction source '" + std::string(text) + "'");
}

PredictionBundle make_bundle(DenseMatrix probs, PredictionSource source) {
  PredictionBundle bundle;
  bundle.predicted.resize(probs.rows());
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    const auto row = probs.row(r);
    double total = 0.0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      require(row[j] >= 0.0, ErrorCode::NotADistribution, "negative probability");
      total += row[j];
      if (row[j] > row[best]) best = j;
    }
    require(std::abs(total - 1.0) <= kRowSumTolerance, ErrorCode::NotADistribution,
            "row " + std::to_string(r) + " sums to " + text::format_double(total));
    bundle.predicted[r] = static_cast<int>(best);
  }
  bundle.probs = std::move(probs);
  bundle.source = source;
  return bundle;
}

GcnGradients gcn_loss_and_gradients(const DenseMatrix& w1, const DenseMatrix& w2,
                                    const SparseRowMatrix& a_hat, const DenseMatrix& ax,
                                    std::span<const int> labels,
                                    std::span<const std::size_t> supervised,
                                    double weight_decay, const DenseMatrix* hidden_mask) {
  const DenseMatrix pre = matmul(ax, w1);
  const DenseMatrix hidden = relu(pre);
  const DenseMatrix dropped = hidden_mask ? hadamard(hidden, *hidden_mask) : hidden;
  const DenseMatrix propagated = spmm(a_hat, dropped);
  const DenseMatrix probs = softmax_rows(matmul(propagated, w2));
  const CrossEntropyResult ce = cross_entropy(probs, labels, supervised);

  GcnGradients out;
  out.loss = ce.loss + 0.5 * weight_decay * (squared_norm(w1) + squared_norm(w2));
  out.w2 = matmul_tn(propagated, ce.grad_logits);
  add_scaled(out.w2, w2, weight_decay);
  // Â is symmetric, so Âᵀ·G = Â·G.
  DenseMatrix grad_dropped = spmm(a_hat, matmul_nt(ce.grad_logits, w2));
  const DenseMatrix grad_hidden =
      hidden_mask ? hadamard(grad_dropped, *hidden_mask) : std::move(grad_dropped);
  out.w1 = matmul_tn(ax, relu_backward(grad_hidden, pre));
  add_scaled(out.w1, w1, weight_decay);
  return out;
}

MlpGradients mlp_loss_and_gradients(const MlpModel& model, const DenseMatrix& x,
                                    std::span<const int> labels, double weight_decay,
                                    const DenseMatrix* hidden_mask) {
  const DenseMatrix pre = add_bias(matmul(x, model.w1), model.b1);
  const DenseMatrix hidden = relu(pre);
  const DenseMatrix dropped = hidden_mask ? hadamard(hidden, *hidden_mask) : hidden;
  const DenseMatrix probs = softmax_rows(add_bias(matmul(dropped, model.w2), model.b2));
  std::vector<std::size_t> rows(x.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  const CrossEntropyResult ce = cross_entropy(probs, labels, rows);

  MlpGradients out;
  out.loss = ce.loss + 0.5 * weight_decay * (squared_norm(model.w1) + squared_norm(model.w2));
  out.w2 = matmul_tn(dropped, ce.grad_logits);
  add_scaled(out.w2, model.w2, weight_decay);
  out.b2 = column_sums(ce.grad_logits);
  DenseMatrix grad_dropped = matmul_nt(ce.grad_logits, model.w2);
  const DenseMatrix grad_hidden =
      hidden_mask ? hadamard(grad_dropped, *hidden_mask) : std::move(grad_dropped);
  const DenseMatrix grad_pre = relu_backward(grad_hidden, pre);
  out.w1 = matmul_tn(x, grad_pre);
  add_scaled(out.w1, model.w1, weight_decay);
  out.b1 = column_sums(grad_pre);
  return out;
}

GcnModel train_gcn(const Graph& g, const TrainConfig& cfg,
                   std::span<const std::size_t> train_nodes) {
  cfg.validate();
  const std::vector<std::size_t> default_nodes =
      train_nodes.empty() ? g.nodes_in(Split::Train) : std::vector<std::size_t>{};
  const std::span<const std::size_t> supervised = train_nodes.empty() ? default_nodes : train_nodes;
  require(!supervised.empty(), ErrorCode::EmptyMask, "no training nodes");

  const SparseRowMatrix a_hat = sym_norm_adjacency(g);
  const DenseMatrix ax = spmm(a_hat, g.features());

  Rng init_rng(mix_seed(cfg.seed, kInitStream));
  GcnModel model;
  model.config = cfg;
  model.w1 = glorot(g.feature_dim(), cfg.hidden, init_rng);
  model.w2 = glorot(cfg.hidden, g.num_classes(), init_rng);

  AdamState adam1(model.w1.rows(), model.w1.cols(), cfg.learning_rate);
  AdamState adam2(model.w2.rows(), model.w2.cols(), cfg.learning_rate);
  Rng dropout_rng(mix_seed(cfg.seed, kDropoutStream));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    DropoutMask mask;
    if (cfg.dropout > 0.0) mask = sample_dropout_mask(g.num_nodes(), cfg.hidden, cfg.dropout, dropout_rng);
    const GcnGradients grads =
        gcn_loss_and_gradients(model.w1, model.w2, a_hat, ax, g.labels(), supervised,
                               cfg.weight_decay, cfg.dropout > 0.0 ? &mask.values : nullptr);
    require_finite_loss(grads.loss, epoch);
    model.loss_history.push_back(grads.loss);
    adam_step(adam1, model.w1, grads.w1);
    adam_step(adam2, model.w2, grads.w2);
  }
  model.w1.check_finite();
  model.w2.check_finite();
  return model;
}

DenseMatrix gcn_hidden_embeddings(const GcnModel& model, const Graph& g) {
  require(model.input_dim() == g.feature_dim(), ErrorCode::ShapeMismatch,
          "model input dim != graph feature dim");
  return relu(matmul(spmm(sym_norm_adjacency(g), g.features()), model.w1));
}

PredictionBundle gcn_forward_deterministic(const GcnModel& model, const Graph& g) {
  require(model.input_dim() == g.feature_dim(), ErrorCode::ShapeMismatch,
          "model input dim != graph feature dim");
  const SparseRowMatrix a_hat = sym_norm_adjacency(g);
  const DenseMatrix hidden = relu(matmul(spmm(a_hat, g.features()), model.w1));
  return make_bundle(softmax_rows(matmul(spmm(a_hat, hidden), model.w2)),
                     PredictionSource::GcnDeterministic);
}

PredictionBundle gcn_mc_dropout(const GcnModel& model, const Graph& g, const McDropoutConfig& mc,
                                std::uint64_t seed) {
  require(mc.passes >= 1, ErrorCode::InvalidParameter, "passes must be >= 1");
  require(mc.rate >= 0.0 && mc.rate < 1.0, ErrorCode::InvalidRate,
          "dropout rate " + std::to_string(mc.rate) + " outside [0, 1)");
  require(model.input_dim() == g.feature_dim(), ErrorCode::ShapeMismatch,
          "model input dim != graph feature dim");
  if (mc.rate == 0.0) {
    // Every mask is all-ones, so every pass equals the deterministic forward.
    PredictionBundle det = gcn_forward_deterministic(model, g);
    det.source = PredictionSource::GcnMcDropout;
    return det;
  }
  const SparseRowMatrix a_hat = sym_norm_adjacency(g);
  const DenseMatrix hidden = relu(matmul(spmm(a_hat, g.features()), model.w1));
  DenseMatrix total(g.num_nodes(), model.num_classes());
  for (int pass = 0; pass < mc.passes; ++pass) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(pass)));
    const DropoutMask mask = sample_dropout_mask(hidden.rows(), hidden.cols(), mc.rate, rng);
    DenseMatrix out = matmul(spmm(a_hat, hadamard(hidden, mask.values)), model.w2);
    if (mc.average == McAverage::Probabilities) out = softmax_rows(out);
    add_scaled(total, out, 1.0);
  }
  const double scale = 1.0 / static_cast<double>(mc.passes);
  for (double& v : total.values()) v *= scale;
  if (mc.average == McAverage::Logits) total = softmax_rows(total);
  return make_bundle(std::move(total), PredictionSource::GcnMcDropout);
}

MlpModel train_mlp(const Graph& g, const TrainConfig& cfg) {
  cfg.validate();
  const std::vector<std::size_t> nodes = labelled_nodes(g);
  require(!nodes.empty(), ErrorCode::EmptyMask, "no labelled nodes");
  const DenseMatrix x = g.features().select_rows(nodes);
  std::vector<int> y(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) y[i] = g.labels()[nodes[i]];

  Rng init_rng(mix_seed(cfg.seed, kInitStream));
  MlpModel model;
  model.config = cfg;
  model.w1 = glorot(g.feature_dim(), cfg.hidden, init_rng);
  model.b1.assign(cfg.hidden, 0.0);
  model.w2 = glorot(cfg.hidden, g.num_classes(), init_rng);
  model.b2.assign(g.num_classes(), 0.0);

  AdamState adam_w1(model.w1.rows(), model.w1.cols(), cfg.learning_rate);
  AdamState adam_b1(1, model.b1.size(), cfg.learning_rate);
  AdamState adam_w2(model.w2.rows(), model.w2.cols(), cfg.learning_rate);
  AdamState adam_b2(1, model.b2.size(), cfg.learning_rate);
  Rng dropout_rng(mix_seed(cfg.seed, kDropoutStream));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    DropoutMask mask;
    if (cfg.dropout > 0.0) mask = sample_dropout_mask(x.rows(), cfg.hidden, cfg.dropout, dropout_rng);
    const MlpGradients grads = mlp_loss_and_gradients(model, x, y, cfg.weight_decay,
                                                      cfg.dropout > 0.0 ? &mask.values : nullptr);
    require_finite_loss(grads.loss, epoch);
    model.loss_history.push_back(grads.loss);
    adam_step(adam_w1, model.w1, grads.w1);
    adam_step(adam_w2, model.w2, grads.w2);
    DenseMatrix b1 = as_row(model.b1);
    DenseMatrix b2 = as_row(model.b2);
    adam_step(adam_b1, b1, as_row(grads.b1));
    adam_step(adam_b2, b2, as_row(grads.b2));
    model.b1.assign(b1.values().begin(), b1.values().end());
    model.b2.assign(b2.values().begin(), b2.values().end());
  }
  return model;
}

PredictionBundle mlp_forward(const MlpModel& model, const DenseMatrix& x) {
  require(x.cols() == model.input_dim(), ErrorCode::ShapeMismatch, "mlp input width");
  const DenseMatrix hidden = relu(add_bias(matmul(x, model.w1), model.b1));
  return make_bundle(softmax_rows(add_bias(matmul(hidden, model.w2), model.b2)),
                     PredictionSource::Mlp);
}

std::vector<std::uint8_t> classify_failures(const PredictionBundle& bundle, const Graph& g) {
  require(bundle.num_nodes() == g.num_nodes(), ErrorCode::RowCountMismatch,
          "bundle covers " + std::to_string(bundle.num_nodes()) + " nodes, graph has " +
              std::to_string(g.num_nodes()));
  std::vector<std::uint8_t> out(g.num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = bundle.predicted[i] != g.labels()[i] ? 1 : 0;
  }
  return out;
}

double accuracy(const PredictionBundle& bundle, const Graph& g,
                std::span<const std::size_t> nodes) {
  require(!nodes.empty(), ErrorCode::EmptySet, "accuracy over an empty node set");
  std::size_t correct = 0;
  for (const std::size_t i : nodes) correct += bundle.predicted[i] == g.labels()[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

// --- checkpoints -----------------------------------------------------------

namespace {

constexpr int kCheckpointVersion = 1;

nlohmann::json to_json(const DenseMatrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.values().begin(), m.values().end())}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  return DenseMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                     j.at("data").get<std::vector<double>>());
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},       {"learning_rate", c.learning_rate},
          {"hidden", c.hidden},       {"weight_decay", c.weight_decay},
          {"dropout", c.dropout},     {"seed", c.seed}};
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.hidden = j.at("hidden").get<std::size_t>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.dropout = j.at("dropout").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

nlohmann::json read_checkpoint(const std::filesystem::path& path, std::string_view format) {
  try {
    nlohmann::json j = nlohmann::json::parse(text::read_file(path));
    require(j.at("format").get<std::string>() == format, ErrorCode::SchemaMismatch,
            path.string() + " is not a " + std::string(format) + " checkpoint");
    require(j.at("version").get<int>() == kCheckpointVersion, ErrorCode::SchemaMismatch,
            path.string() + ": unsupported checkpoint version");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace

void save_checkpoint(const GcnModel& model, const std::filesystem::path& path) {
  const nlohmann::json j = {{"format", "graphrank.gcn"},
                            {"version", kCheckpointVersion},
                            {"config", to_json(model.config)},
                            {"w1", to_json(model.w1)},
                            {"w2", to_json(model.w2)}};
  text::write_file(path, j.dump() + "\n");
}

void save_checkpoint(const MlpModel& model, const std::filesystem::path& path) {
  const nlohmann::json j = {{"format", "graphrank.mlp"},
                            {"version", kCheckpointVersion},
                            {"config", to_json(model.config)},
                            {"w1", to_json(model.w1)},
                            {"b1", model.b1},
                            {"w2", to_json(model.w2)},
                            {"b2", model.b2}};
  text::write_file(path, j.dump() + "\n");
}

GcnModel load_gcn_checkpoint(const std::filesystem::path& path) {
  const nlohmann::json j = read_checkpoint(path, "graphrank.gcn");
  try {
    GcnModel model;
    model.config = config_from_json(j.at("config"));
    model.w1 = matrix_from_json(j.at("w1"));
    model.w2 = matrix_from_json(j.at("w2"));
    require(model.w1.cols() == model.w2.rows(), ErrorCode::ShapeMismatch,
            "checkpoint layer shapes do not chain");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

MlpModel load_mlp_checkpoint(const std::filesystem::path& path) {
  const nlohmann::json j = read_checkpoint(path, "graphrank.mlp");
  try {
    MlpModel model;
    model.config = config_from_json(j.at("config"));
    model.w1 = matrix_from_json(j.at("w1"));
    model.b1 = j.at("b1").get<std::vector<double>>();
    model.w2 = matrix_from_json(j.at("w2"));
    model.b2 = j.at("b2").get<std::vector<double>>();
    require(model.w1.cols() == model.w2.rows() && model.b1.size() == model.w1.cols() &&
                model.b2.size() == model.w2.cols(),
            ErrorCode::ShapeMismatch, "checkpoint layer shapes do not chain");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void save_predictions(const PredictionBundle& bundle, const std::filesystem::path& path) {
  std::string out = "#source=" + std::string(to_string(bundle.source)) + "\nnode,predicted";
  for (std::size_t j = 0; j < bundle.num_classes(); ++j) out += ",p" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < bundle.num_nodes(); ++i) {
    out += std::to_string(i) + ',' + std::to_string(bundle.predicted[i]);
    for (const double p : bundle.probs.row(i)) out += ',' + text::format_double(p);
    out += '\n';
  }
  text::write_file(path, out);
}

PredictionBundle load_predictions(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path, false);
  require(lines.size() >= 2 && lines[0].text.rfind("#source=", 0) == 0, ErrorCode::ParseError,
          path.string() + ": missing #source header");
  const PredictionSource source = parse_prediction_source(lines[0].text.substr(8));
  const std::size_t width = text::split(lines[1].text, ',').size();
  require(width >= 3, ErrorCode::ParseError, path.string() + ": header has no class columns");
  const std::size_t c = width - 2;
  const std::size_t n = lines.size() - 2;
  std::vector<double> values;
  values.reserve(n * c);
  std::vector<int> predicted(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& line = lines[r + 2];
    const std::string at = path.filename().string() + " line " + std::to_string(line.number);
    const auto parts = text::split(line.text, ',');
    require(parts.size() == width, ErrorCode::ParseError, at + ": wrong field count");
    require(text::parse_index(parts[0], at) == r, ErrorCode::ParseError, at + ": node ids out of order");
    predicted[r] = static_cast<int>(text::parse_int(parts[1], at));
    for (std::size_t j = 0; j < c; ++j) values.push_back(text::parse_double(parts[j + 2], at));
  }
  PredictionBundle bundle = make_bundle(DenseMatrix(n, c, std::move(values)), source);
  require(bundle.predicted == predicted, ErrorCode::ParseError,
          path.string() + ": predicted column disagrees with argmax");
  return bundle;
}

}  // namespace graphrank
