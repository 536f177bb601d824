#pragma once

#include <Eigen/Dense>

#include "wordlab/learner.hpp"

namespace wordlab {

struct MlpConfig {
  uint32_t h1 = 128;
  uint32_t h2 = 128;
  uint32_t hidden_layers = 2;  // 1 uses h1 only
  double lr = 0.01;
  double lr_decay = 0.001;  // lr_t = lr / (1 + lr_decay * t), t = update count
  uint32_t batch = 32;
  uint32_t epochs = 200;
  uint64_t seed = 0;
};

// Feed-forward net: rectified hidden layers, sigmoid outputs, one output
// unit per word. Trained by mini-batch gradient descent on the mean (over
// samples and words) binary cross-entropy. Weights are public so tests can
// pin fixtures.
class MlpModel : public MultiLabelModel {
public:
  MlpModel(size_t n, size_t m, const MlpConfig& cfg);

  Matrix predict_scores(const Matrix& X) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }
  size_t label_count() const override { return m_; }
  size_t feature_count() const override { return n_; }

  // weights[l] maps layer l inputs (rows) to outputs (cols).
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  void zero_parameters();

private:
  size_t n_, m_;
};

// He-scaled random init from the seeded stream, no training.
std::unique_ptr<MlpModel> mlp_init(size_t n, size_t m, const MlpConfig& cfg);

// Mini-batch training of an initialized model. Throws on non-finite loss.
void mlp_train(MlpModel& model, const Matrix& X, const LabelMatrix& Y,
               const MlpConfig& cfg);

std::unique_ptr<MlpModel> mlp_fit(const Matrix& X, const LabelMatrix& Y,
                                  const MlpConfig& cfg);

// Mean binary cross-entropy over samples and words, computed from logits
// for stability.
double mlp_loss(const MlpModel& model, const Matrix& X, const LabelMatrix& Y);

struct MlpGradients {
  std::vector<Eigen::MatrixXd> d_weights;
  std::vector<Eigen::VectorXd> d_biases;
};

// Full-batch gradient of mlp_loss at the model's current parameters.
MlpGradients mlp_gradients(const MlpModel& model, const Matrix& X,
                           const LabelMatrix& Y);

void mlp_apply_step(MlpModel& model, const MlpGradients& grads, double lr);

}  // namespace wordlab
