#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wordlab/learners/linear.hpp"
#include "wordlab/rng.hpp"

using namespace wordlab;

namespace {

Matrix matrix_from(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix out(rows.size(), rows.begin()->size());
  size_t i = 0;
  for (const auto& row : rows) {
    size_t j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

struct Toy {
  Matrix X;
  std::vector<uint8_t> y;
};

Toy make_toy(uint32_t per_class, uint64_t seed) {
  Rng rng(seed);
  Matrix X(2 * per_class, 2);
  std::vector<uint8_t> y(2 * per_class);
  for (uint32_t i = 0; i < 2 * per_class; ++i) {
    y[i] = i < per_class;
    X(i, 0) = (y[i] ? 0.7 : 0.2) + 0.15 * rng.uniform01();
    X(i, 1) = (y[i] ? 0.6 : 0.3) + 0.15 * rng.uniform01();
  }
  return {std::move(X), std::move(y)};
}

}  // namespace

TEST_CASE("batch logistic regression separates separable data") {
  Matrix X = matrix_from({{0.1}, {0.2}, {0.8}, {0.9}});
  std::vector<uint8_t> y = {0, 0, 1, 1};
  LogRegTrainer trainer(0.5, 1e-6, 500);
  auto model = trainer.fit(X, y, 0);
  for (size_t i = 0; i < 4; ++i) {
    const double p = model->score(X.row(i));
    CHECK((p > 0.5) == (y[i] != 0));
  }
}

TEST_CASE("logistic gradient matches central finite differences") {
  Rng rng(5);
  Matrix X(8, 3);
  std::vector<uint8_t> y(8);
  for (size_t i = 0; i < 8; ++i) {
    y[i] = rng.bernoulli(0.5);
    for (size_t j = 0; j < 3; ++j) X(i, j) = rng.uniform01();
  }
  std::vector<double> w = {0.3, -0.2, 0.55, 0.1};
  const double l2 = 0.01;

  std::vector<double> grad(4);
  linear_gradient(X, y, w, l2, LinearLoss::log, grad);

  const double step = 1e-6;
  for (size_t j = 0; j < 4; ++j) {
    std::vector<double> lo = w, hi = w;
    lo[j] -= step;
    hi[j] += step;
    const double numeric =
        (linear_objective(X, y, hi, l2, LinearLoss::log) -
         linear_objective(X, y, lo, l2, LinearLoss::log)) /
        (2.0 * step);
    CHECK(std::abs(grad[j] - numeric) / std::max(1.0, std::abs(numeric)) <
          1e-5);
  }
}

TEST_CASE("full-batch loss is monotone under small steps") {
  Toy toy = make_toy(20, 9);
  std::vector<double> w(3, 0.0);
  std::vector<double> grad(3);
  double last = linear_objective(toy.X, toy.y, w, 1e-4, LinearLoss::log);
  for (int step = 0; step < 50; ++step) {
    linear_gradient(toy.X, toy.y, w, 1e-4, LinearLoss::log, grad);
    for (size_t j = 0; j < 3; ++j) w[j] -= 0.01 * grad[j];
    const double now = linear_objective(toy.X, toy.y, w, 1e-4, LinearLoss::log);
    CHECK(now <= last + 1e-12);
    last = now;
  }
}

TEST_CASE("a single stochastic update equals the hand-computed step") {
  Matrix X = matrix_from({{0.5, -0.25}});
  std::vector<uint8_t> y = {1};
  SgdTrainer trainer(LinearLoss::log, 0.1, 1e-4, 1);
  auto fitted = trainer.fit(X, y, 7);
  auto* model = dynamic_cast<LinearBinaryModel*>(fitted.get());
  REQUIRE(model != nullptr);
  // w starts at zero: sigmoid(0) = 0.5, dz = -0.5, lr = 0.1
  CHECK(model->weights[0] == doctest::Approx(0.1 * 0.5 * 0.5).epsilon(1e-15));
  CHECK(model->weights[1] == doctest::Approx(-0.1 * 0.5 * 0.25).epsilon(1e-15));
  CHECK(model->weights[2] == doctest::Approx(0.1 * 0.5).epsilon(1e-15));
}

TEST_CASE("zero learning rate leaves the model at initialization") {
  Toy toy = make_toy(10, 11);
  SgdTrainer trainer(LinearLoss::log, 0.0, 1e-4, 5);
  auto fitted = trainer.fit(toy.X, toy.y, 3);
  auto* model = dynamic_cast<LinearBinaryModel*>(fitted.get());
  REQUIRE(model != nullptr);
  for (double w : model->weights) CHECK(w == 0.0);
}

TEST_CASE("stochastic training approaches the batch optimum") {
  Toy toy = make_toy(25, 13);
  const double l2 = 1e-4;

  LogRegTrainer batch(0.5, l2, 3000, 1e-10);
  auto batch_fitted = batch.fit(toy.X, toy.y, 0);
  auto* batch_model = dynamic_cast<LinearBinaryModel*>(batch_fitted.get());

  SgdTrainer stochastic(LinearLoss::log, 0.1, l2, 60);
  auto sgd_fitted = stochastic.fit(toy.X, toy.y, 17);
  auto* sgd_model = dynamic_cast<LinearBinaryModel*>(sgd_fitted.get());

  const double batch_loss =
      linear_objective(toy.X, toy.y, batch_model->weights, l2, LinearLoss::log);
  const double sgd_loss =
      linear_objective(toy.X, toy.y, sgd_model->weights, l2, LinearLoss::log);
  CHECK(sgd_loss <= batch_loss * 1.05);
  CHECK(sgd_loss >= batch_loss * 0.95);
}

TEST_CASE("hinge-loss stochastic training uses margins") {
  Toy toy = make_toy(15, 19);
  SgdTrainer trainer(LinearLoss::hinge, 0.1, 1e-4, 30);
  auto model = trainer.fit(toy.X, toy.y, 5);
  CHECK(model->score_kind() == ScoreKind::margin);
  size_t correct = 0;
  for (size_t i = 0; i < toy.X.rows(); ++i) {
    correct += (model->score(toy.X.row(i)) > 0.0) == (toy.y[i] != 0);
  }
  CHECK(correct == toy.X.rows());
}

TEST_CASE("passive-aggressive hand-applied update") {
  std::vector<double> w = {0.0, 0.0};
  const std::vector<double> x = {1.0, 0.0};
  const double tau =
      pa_update(w, x, +1, std::numeric_limits<double>::infinity());
  CHECK(tau == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[1] == 0.0);
}

TEST_CASE("a confident margin leaves the weights untouched") {
  std::vector<double> w = {2.0, 0.0};
  const std::vector<double> x = {1.0, 0.0};
  const double tau = pa_update(w, x, +1, 10.0);
  CHECK(tau == 0.0);
  CHECK(w[0] == 2.0);
}

TEST_CASE("an unbinding update zeroes the hinge loss; a binding one never raises it") {
  Rng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> w = {rng.uniform01() - 0.5, rng.uniform01() - 0.5,
                             rng.uniform01() - 0.5};
    std::vector<double> x = {rng.uniform01(), rng.uniform01(),
                             rng.uniform01()};
    const int y = rng.bernoulli(0.5) ? 1 : -1;
    auto hinge = [&](const std::vector<double>& weights) {
      double z = 0.0;
      for (size_t j = 0; j < 3; ++j) z += weights[j] * x[j];
      return std::max(0.0, 1.0 - y * z);
    };
    const double before = hinge(w);

    std::vector<double> unbounded = w;
    pa_update(unbounded, x, y, 1e18);
    CHECK(hinge(unbounded) == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<double> bounded = w;
    pa_update(bounded, x, y, 0.05);
    CHECK(hinge(bounded) <= before + 1e-12);
  }
}

TEST_CASE("zero-norm samples with positive loss are skipped") {
  std::vector<double> w = {0.0, 0.0};
  const std::vector<double> x = {0.0, 0.0};
  CHECK(pa_update(w, x, +1, 1.0) == 0.0);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);
}

TEST_CASE("passive-aggressive trainer separates the toy problem") {
  Toy toy = make_toy(20, 29);
  PaTrainer trainer(1.0, 5);
  auto model = trainer.fit(toy.X, toy.y, 31);
  size_t correct = 0;
  for (size_t i = 0; i < toy.X.rows(); ++i) {
    correct += (model->score(toy.X.row(i)) > 0.0) == (toy.y[i] != 0);
  }
  CHECK(static_cast<double>(correct) / toy.X.rows() >= 0.95);
}
