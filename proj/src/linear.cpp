#include "wordlab/learners/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wordlab/rng.hpp"

namespace wordlab {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(a)) without overflow
double softplus(double a) {
  return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a)));
}

double dot_aug(std::span<const double> w, std::span<const double> x) {
  double z = w[x.size()];  // bias
  for (size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
  return z;
}

}  // namespace

double LinearBinaryModel::margin(std::span<const double> x) const {
  if (x.size() + 1 != weights.size()) {
    throw shape_error("linear model: dimension mismatch");
  }
  return dot_aug(weights, x);
}

double LinearBinaryModel::score(std::span<const double> x) const {
  const double z = margin(x);
  return loss == LinearLoss::log ? sigmoid(z) : z;
}

double linear_objective(const Matrix& X, const std::vector<uint8_t>& y,
                        std::span<const double> w, double l2,
                        LinearLoss loss) {
  const size_t rows = X.rows(), n = X.cols();
  double total = 0.0;
  for (size_t i = 0; i < rows; ++i) {
    const double z = dot_aug(w, X.row(i));
    const double sign = y[i] ? 1.0 : -1.0;
    total += loss == LinearLoss::log ? softplus(-sign * z)
                                     : std::max(0.0, 1.0 - sign * z);
  }
  double reg = 0.0;
  for (size_t j = 0; j < n; ++j) reg += w[j] * w[j];  // bias unregularized
  return total / rows + 0.5 * l2 * reg;
}

void linear_gradient(const Matrix& X, const std::vector<uint8_t>& y,
                     std::span<const double> w, double l2, LinearLoss loss,
                     std::span<double> grad_out) {
  const size_t rows = X.rows(), n = X.cols();
  std::fill(grad_out.begin(), grad_out.end(), 0.0);
  for (size_t i = 0; i < rows; ++i) {
    auto x = X.row(i);
    const double z = dot_aug(w, x);
    double dz;
    if (loss == LinearLoss::log) {
      dz = sigmoid(z) - (y[i] ? 1.0 : 0.0);
    } else {
      const double sign = y[i] ? 1.0 : -1.0;
      dz = 1.0 - sign * z > 0.0 ? -sign : 0.0;
    }
    for (size_t j = 0; j < n; ++j) grad_out[j] += dz * x[j];
    grad_out[n] += dz;
  }
  for (size_t j = 0; j <= n; ++j) grad_out[j] /= rows;
  for (size_t j = 0; j < n; ++j) grad_out[j] += l2 * w[j];
}

std::unique_ptr<BinaryModel> LogRegTrainer::fit(const Matrix& X,
                                                const std::vector<uint8_t>& y,
                                                uint64_t) const {
  const size_t n = X.cols();
  auto model = std::make_unique<LinearBinaryModel>(n, LinearLoss::log);
  std::vector<double> grad(n + 1);
  for (uint32_t t = 0; t < epochs_; ++t) {
    linear_gradient(X, y, model->weights, l2_, LinearLoss::log, grad);
    double norm = std::sqrt(
        std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
    if (norm <= tol_) break;
    const double lr = lr_ / (1.0 + 0.01 * t);
    for (size_t j = 0; j <= n; ++j) model->weights[j] -= lr * grad[j];
  }
  return model;
}

namespace {

// Shared by batch fit and incremental updates. Batch training decays the
// rate per epoch, lr / (1 + 0.01 * epoch); single-pass online updates use
// the constant base rate.
class SgdBinaryModel : public LinearBinaryModel {
public:
  SgdBinaryModel(size_t n, LinearLoss loss, double lr, double l2)
      : LinearBinaryModel(n, loss), lr0_(lr), l2_(l2) {}

  void step(std::span<const double> x, uint8_t label, double lr) {
    const size_t n = x.size();
    const double z = dot_aug(weights, x);
    double dz;
    if (loss == LinearLoss::log) {
      dz = sigmoid(z) - (label ? 1.0 : 0.0);
    } else {
      const double sign = label ? 1.0 : -1.0;
      dz = 1.0 - sign * z > 0.0 ? -sign : 0.0;
    }
    for (size_t j = 0; j < n; ++j) {
      weights[j] -= lr * (dz * x[j] + l2_ * weights[j]);
    }
    weights[n] -= lr * dz;
  }

  double base_rate() const { return lr0_; }

  bool supports_update() const override { return true; }
  void update(std::span<const double> x, uint8_t label) override {
    step(x, label, lr0_);
  }

private:
  double lr0_, l2_;
};

class PaBinaryModel : public LinearBinaryModel {
public:
  PaBinaryModel(size_t n, double aggressiveness)
      : LinearBinaryModel(n, LinearLoss::hinge), c_(aggressiveness) {}

  void step(std::span<const double> x, uint8_t label) {
    // Augmented sample: the always-1 bias feature joins the norm.
    aug_.assign(x.begin(), x.end());
    aug_.push_back(1.0);
    pa_update(weights, aug_, label ? 1 : -1, c_);
  }

  bool supports_update() const override { return true; }
  void update(std::span<const double> x, uint8_t label) override {
    step(x, label);
  }

private:
  double c_;
  std::vector<double> aug_;
};

}  // namespace

double pa_update(std::vector<double>& w, std::span<const double> x, int y,
                 double aggressiveness) {
  double z = 0.0, norm2 = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    z += w[j] * x[j];
    norm2 += x[j] * x[j];
  }
  const double loss = std::max(0.0, 1.0 - y * z);
  if (loss <= 0.0 || norm2 <= 0.0) return 0.0;
  const double tau = std::min(aggressiveness, loss / norm2);
  for (size_t j = 0; j < x.size(); ++j) w[j] += tau * y * x[j];
  return tau;
}

std::unique_ptr<BinaryModel> SgdTrainer::fit(const Matrix& X,
                                             const std::vector<uint8_t>& y,
                                             uint64_t seed) const {
  auto model = std::make_unique<SgdBinaryModel>(X.cols(), loss_, lr_, l2_);
  std::vector<uint32_t> order(X.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (uint32_t epoch = 0; epoch < epochs_; ++epoch) {
    rng.shuffle(order);
    const double lr = lr_ / (1.0 + 0.01 * epoch);
    for (uint32_t i : order) model->step(X.row(i), y[i], lr);
  }
  return model;
}

std::unique_ptr<BinaryModel> SgdTrainer::make_empty(size_t n,
                                                    uint64_t) const {
  return std::make_unique<SgdBinaryModel>(n, loss_, lr_, l2_);
}

std::unique_ptr<BinaryModel> PaTrainer::fit(const Matrix& X,
                                            const std::vector<uint8_t>& y,
                                            uint64_t seed) const {
  auto model = std::make_unique<PaBinaryModel>(X.cols(), c_);
  std::vector<uint32_t> order(X.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (uint32_t epoch = 0; epoch < epochs_; ++epoch) {
    rng.shuffle(order);
    for (uint32_t i : order) model->step(X.row(i), y[i]);
  }
  return model;
}

std::unique_ptr<BinaryModel> PaTrainer::make_empty(size_t n, uint64_t) const {
  return std::make_unique<PaBinaryModel>(n, c_);
}

}  // namespace wordlab
