#pragma once

#include "wordlab/learner.hpp"

namespace wordlab {

enum class LinearLoss { log, hinge };

// Linear binary model. The bias is an always-1 appended feature, so the
// weight vector has n+1 entries with the bias last. Log-loss models score
// sigmoid(z) as a probability; hinge-loss models score the raw margin z.
class LinearBinaryModel : public BinaryModel {
public:
  LinearBinaryModel(size_t n, LinearLoss loss)
      : weights(n + 1, 0.0), loss(loss) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override {
    return loss == LinearLoss::log ? ScoreKind::probability
                                   : ScoreKind::margin;
  }

  double margin(std::span<const double> x) const;

  std::vector<double> weights;  // length n+1, bias last
  LinearLoss loss;
};

// Mean loss over samples plus (l2/2)*|w|^2; the bias term is not
// regularized. w has n+1 entries, bias last. Shared by the batch and
// stochastic optimizers and by the finite-difference tests.
double linear_objective(const Matrix& X, const std::vector<uint8_t>& y,
                        std::span<const double> w, double l2, LinearLoss loss);
void linear_gradient(const Matrix& X, const std::vector<uint8_t>& y,
                     std::span<const double> w, double l2, LinearLoss loss,
                     std::span<double> grad_out);

// PA-I step on raw vectors (no implicit bias): with hinge loss
// l = max(0, 1 - y*<w,x>), tau = min(C, l / |x|^2), w += tau*y*x.
// Returns tau; a zero-norm sample with positive loss is skipped (tau=0).
double pa_update(std::vector<double>& w, std::span<const double> x, int y,
                 double aggressiveness);

// Full-batch gradient descent on the regularized log-loss; stops when the
// gradient norm drops to tol or the epoch budget runs out.
class LogRegTrainer : public BinaryTrainer {
public:
  LogRegTrainer(double lr = 0.1, double l2 = 1e-4, uint32_t epochs = 100,
                double tol = 1e-6)
      : lr_(lr), l2_(l2), epochs_(epochs), tol_(tol) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  double lr_, l2_;
  uint32_t epochs_;
  double tol_;
};

// Per-sample updates over shuffled epochs, learning rate
// lr / (1 + 0.01 * epoch). Incremental updates run one ordered pass per
// arriving sample at the constant base rate.
class SgdTrainer : public BinaryTrainer {
public:
  SgdTrainer(LinearLoss loss = LinearLoss::log, double lr = 0.1,
             double l2 = 1e-4, uint32_t epochs = 20)
      : loss_(loss), lr_(lr), l2_(l2), epochs_(epochs) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override {
    return loss_ == LinearLoss::log ? ScoreKind::probability
                                    : ScoreKind::margin;
  }
  bool incremental() const override { return true; }
  std::unique_ptr<BinaryModel> make_empty(size_t n,
                                          uint64_t seed) const override;

private:
  LinearLoss loss_;
  double lr_, l2_;
  uint32_t epochs_;
};

class PaTrainer : public BinaryTrainer {
public:
  PaTrainer(double aggressiveness = 1.0, uint32_t epochs = 5)
      : c_(aggressiveness), epochs_(epochs) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::margin; }
  bool incremental() const override { return true; }
  std::unique_ptr<BinaryModel> make_empty(size_t n,
                                          uint64_t seed) const override;

private:
  double c_;
  uint32_t epochs_;
};

}  // namespace wordlab
