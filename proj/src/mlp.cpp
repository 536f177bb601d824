#include "wordlab/learners/mlp.hpp"

#include <cmath>
#include <numeric>

#include "wordlab/rng.hpp"

namespace wordlab {

namespace {

using EMatrix = Eigen::MatrixXd;
using EVector = Eigen::VectorXd;
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

EMatrix gather_rows(const Matrix& X, std::span<const uint32_t> rows) {
  EMatrix out(rows.size(), X.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.row(i) = RowMajorMap(X.data(), X.rows(), X.cols()).row(rows[i]);
  }
  return out;
}

EMatrix gather_labels(const LabelMatrix& Y, std::span<const uint32_t> rows) {
  EMatrix out(rows.size(), Y.label_count());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < Y.label_count(); ++j) {
      out(i, j) = Y.get(rows[i], j);
    }
  }
  return out;
}

// Forward pass through the model; logits of the output layer.
EMatrix forward_logits(const MlpModel& model, const EMatrix& input,
                       std::vector<EMatrix>* activations = nullptr) {
  EMatrix a = input;
  const size_t layers = model.weights.size();
  if (activations) activations->push_back(a);
  for (size_t l = 0; l < layers; ++l) {
    EMatrix z =
        (a * model.weights[l]).rowwise() + model.biases[l].transpose();
    if (l + 1 == layers) return z;
    a = z.cwiseMax(0.0);  // rectifier on hidden layers
    if (activations) activations->push_back(a);
  }
  return a;  // unreachable for layers >= 1
}

// Mean over samples and words of the binary cross-entropy, from logits:
// softplus(z) - y z.
double bce_from_logits(const EMatrix& z, const EMatrix& y) {
  const auto softplus =
      z.array().max(0.0) + (-z.array().abs()).exp().log1p();
  return (softplus - y.array() * z.array()).mean();
}

struct BatchResult {
  double loss = 0.0;
  std::vector<EMatrix> d_weights;
  std::vector<EVector> d_biases;
};

BatchResult forward_backward(const MlpModel& model, const EMatrix& input,
                             const EMatrix& y) {
  std::vector<EMatrix> activations;
  EMatrix z = forward_logits(model, input, &activations);
  BatchResult result;
  result.loss = bce_from_logits(z, y);

  const size_t layers = model.weights.size();
  result.d_weights.resize(layers);
  result.d_biases.resize(layers);

  const double scale = 1.0 / (static_cast<double>(z.rows()) * z.cols());
  // sigmoid(z) - y, scaled by the loss normalization
  EMatrix delta =
      ((1.0 / (1.0 + (-z.array()).exp())) - y.array()).matrix() * scale;
  for (size_t l = layers; l-- > 0;) {
    result.d_weights[l] = activations[l].transpose() * delta;
    result.d_biases[l] = delta.colwise().sum();
    if (l > 0) {
      EMatrix da = delta * model.weights[l].transpose();
      // rectifier gate: activations[l] is relu(z_l), positive iff z_l > 0
      delta = (da.array() * (activations[l].array() > 0.0).cast<double>())
                  .matrix();
    }
  }
  return result;
}

std::vector<size_t> layer_sizes(size_t n, size_t m, const MlpConfig& cfg) {
  if (cfg.hidden_layers == 1) return {n, cfg.h1, m};
  if (cfg.hidden_layers == 2) return {n, cfg.h1, cfg.h2, m};
  throw parameter_error("mlp: hidden_layers must be 1 or 2");
}

}  // namespace

MlpModel::MlpModel(size_t n, size_t m, const MlpConfig& cfg) : n_(n), m_(m) {
  const auto sizes = layer_sizes(n, m, cfg);
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    weights.emplace_back(EMatrix::Zero(sizes[l], sizes[l + 1]));
    biases.emplace_back(EVector::Zero(sizes[l + 1]));
  }
}

void MlpModel::zero_parameters() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

Matrix MlpModel::predict_scores(const Matrix& X) const {
  if (X.cols() != n_) throw shape_error("mlp predict: dimension mismatch");
  Matrix scores(X.rows(), m_);
  constexpr size_t kChunk = 512;
  std::vector<uint32_t> rows;
  for (size_t start = 0; start < X.rows(); start += kChunk) {
    const size_t count = std::min(kChunk, X.rows() - start);
    rows.resize(count);
    std::iota(rows.begin(), rows.end(), static_cast<uint32_t>(start));
    EMatrix z = forward_logits(*this, gather_rows(X, rows));
    for (size_t i = 0; i < count; ++i) {
      for (size_t j = 0; j < m_; ++j) {
        scores(start + i, j) = 1.0 / (1.0 + std::exp(-z(i, j)));
      }
    }
  }
  return scores;
}

std::unique_ptr<MlpModel> mlp_init(size_t n, size_t m, const MlpConfig& cfg) {
  auto model = std::make_unique<MlpModel>(n, m, cfg);
  Rng rng(derive_seed(cfg.seed, "mlp-init"));
  for (auto& w : model->weights) {
    const double scale = std::sqrt(2.0 / static_cast<double>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        w(r, c) = scale * rng.gaussian();
      }
    }
  }
  return model;
}

void mlp_train(MlpModel& model, const Matrix& X, const LabelMatrix& Y,
               const MlpConfig& cfg) {
  if (X.rows() != Y.rows()) throw shape_error("mlp fit: row mismatch");
  if (X.rows() == 0) throw parameter_error("mlp fit: empty training set");
  if (cfg.batch < 1) throw parameter_error("mlp fit: batch must be >= 1");

  Rng shuffle_rng(derive_seed(cfg.seed, "mlp-shuffle"));
  std::vector<uint32_t> order(X.rows());
  std::iota(order.begin(), order.end(), 0);

  uint64_t t = 0;
  for (uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (size_t start = 0; start < order.size(); start += cfg.batch) {
      const size_t count = std::min<size_t>(cfg.batch, order.size() - start);
      std::span<const uint32_t> batch(order.data() + start, count);
      BatchResult result =
          forward_backward(model, gather_rows(X, batch), gather_labels(Y, batch));
      if (!std::isfinite(result.loss)) {
        throw std::runtime_error(
            "mlp fit: non-finite loss at epoch " + std::to_string(epoch) +
            ", update " + std::to_string(t));
      }
      const double lr = cfg.lr / (1.0 + cfg.lr_decay * static_cast<double>(t));
      for (size_t l = 0; l < model.weights.size(); ++l) {
        model.weights[l].noalias() -= lr * result.d_weights[l];
        model.biases[l].noalias() -= lr * result.d_biases[l];
      }
      ++t;
    }
  }
}

std::unique_ptr<MlpModel> mlp_fit(const Matrix& X, const LabelMatrix& Y,
                                  const MlpConfig& cfg) {
  auto model = mlp_init(X.cols(), Y.label_count(), cfg);
  mlp_train(*model, X, Y, cfg);
  return model;
}

double mlp_loss(const MlpModel& model, const Matrix& X, const LabelMatrix& Y) {
  std::vector<uint32_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  EMatrix z = forward_logits(model, gather_rows(X, rows));
  return bce_from_logits(z, gather_labels(Y, rows));
}

MlpGradients mlp_gradients(const MlpModel& model, const Matrix& X,
                           const LabelMatrix& Y) {
  std::vector<uint32_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  BatchResult result =
      forward_backward(model, gather_rows(X, rows), gather_labels(Y, rows));
  MlpGradients grads;
  grads.d_weights = std::move(result.d_weights);
  grads.d_biases = std::move(result.d_biases);
  return grads;
}

void mlp_apply_step(MlpModel& model, const MlpGradients& grads, double lr) {
  for (size_t l = 0; l < model.weights.size(); ++l) {
    model.weights[l].noalias() -= lr * grads.d_weights[l];
    model.biases[l].noalias() -= lr * grads.d_biases[l];
  }
}

}  // namespace wordlab
