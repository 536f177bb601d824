#include "wordlab/learners/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wordlab {

namespace {

// log(exp(a) + exp(b)) without overflow.
double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double GaussianNbBinaryModel::log_likelihood(const ClassStats& s,
                                             std::span<const double> x) const {
  if (x.size() != s.mean.size()) {
    throw shape_error("gaussian_nb: dimension mismatch");
  }
  double ll = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - s.mean[j];
    ll += -0.5 * (std::log(2.0 * std::numbers::pi * s.var[j]) +
                  d * d / s.var[j]);
  }
  return ll;
}

double GaussianNbBinaryModel::score(std::span<const double> x) const {
  const double a = log_likelihood(pos_, x) + pos_.log_prior;
  const double b = log_likelihood(neg_, x) + neg_.log_prior;
  return std::exp(a - log_sum_exp(a, b));
}

std::unique_ptr<BinaryModel> GaussianNbTrainer::fit(
    const Matrix& X, const std::vector<uint8_t>& y, uint64_t) const {
  const size_t n = X.cols(), rows = X.rows();
  size_t pos_count = 0;
  for (uint8_t v : y) pos_count += v;
  const size_t neg_count = rows - pos_count;
  if (pos_count == 0 || neg_count == 0) {
    throw parameter_error("gaussian_nb: both classes required");
  }

  GaussianNbBinaryModel::ClassStats pos, neg;
  pos.mean.assign(n, 0.0);
  pos.var.assign(n, 0.0);
  neg.mean.assign(n, 0.0);
  neg.var.assign(n, 0.0);
  for (size_t i = 0; i < rows; ++i) {
    auto row = X.row(i);
    auto& mean = y[i] ? pos.mean : neg.mean;
    for (size_t j = 0; j < n; ++j) mean[j] += row[j];
  }
  for (size_t j = 0; j < n; ++j) {
    pos.mean[j] /= pos_count;
    neg.mean[j] /= neg_count;
  }
  // Pooled per-feature variance sets the scale of the floor.
  double max_pooled_var = 0.0;
  std::vector<double> total_mean(n, 0.0), total_ss(n, 0.0);
  for (size_t i = 0; i < rows; ++i) {
    auto row = X.row(i);
    for (size_t j = 0; j < n; ++j) total_mean[j] += row[j];
  }
  for (size_t j = 0; j < n; ++j) total_mean[j] /= rows;
  for (size_t i = 0; i < rows; ++i) {
    auto row = X.row(i);
    auto& var = y[i] ? pos.var : neg.var;
    for (size_t j = 0; j < n; ++j) {
      const double dc = row[j] - (y[i] ? pos.mean[j] : neg.mean[j]);
      var[j] += dc * dc;
      const double dt = row[j] - total_mean[j];
      total_ss[j] += dt * dt;
    }
  }
  for (size_t j = 0; j < n; ++j) {
    max_pooled_var = std::max(max_pooled_var, total_ss[j] / rows);
  }
  double floor = var_floor_scale_ * max_pooled_var;
  if (!(floor > 0.0)) floor = var_floor_scale_;  // fully constant data
  for (size_t j = 0; j < n; ++j) {
    pos.var[j] = pos.var[j] / pos_count + floor;
    neg.var[j] = neg.var[j] / neg_count + floor;
  }
  pos.log_prior = std::log(static_cast<double>(pos_count) / rows);
  neg.log_prior = std::log(static_cast<double>(neg_count) / rows);
  return std::make_unique<GaussianNbBinaryModel>(std::move(pos),
                                                 std::move(neg));
}

double MultinomialNbBinaryModel::score(std::span<const double> x) const {
  if (x.size() != pos_.log_theta.size()) {
    throw shape_error("multinomial_nb: dimension mismatch");
  }
  double a = pos_.log_prior, b = neg_.log_prior;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0.0) {
      throw parameter_error("multinomial_nb: negative feature value");
    }
    a += x[j] * pos_.log_theta[j];
    b += x[j] * neg_.log_theta[j];
  }
  return std::exp(a - log_sum_exp(a, b));
}

std::unique_ptr<BinaryModel> MultinomialNbTrainer::fit(
    const Matrix& X, const std::vector<uint8_t>& y, uint64_t) const {
  const size_t n = X.cols(), rows = X.rows();
  size_t pos_count = 0;
  for (uint8_t v : y) pos_count += v;
  const size_t neg_count = rows - pos_count;
  if (pos_count == 0 || neg_count == 0) {
    throw parameter_error("multinomial_nb: both classes required");
  }

  std::vector<double> pos_totals(n, 0.0), neg_totals(n, 0.0);
  for (size_t i = 0; i < rows; ++i) {
    auto row = X.row(i);
    auto& totals = y[i] ? pos_totals : neg_totals;
    for (size_t j = 0; j < n; ++j) {
      if (row[j] < 0.0) {
        throw parameter_error("multinomial_nb: negative feature value");
      }
      totals[j] += row[j];
    }
  }

  auto make = [&](const std::vector<double>& totals, size_t count) {
    MultinomialNbBinaryModel::ClassParams params;
    double total = 0.0;
    for (double t : totals) total += t + alpha_;
    params.log_theta.resize(n);
    for (size_t j = 0; j < n; ++j) {
      params.log_theta[j] = std::log((totals[j] + alpha_) / total);
    }
    params.log_prior = std::log(static_cast<double>(count) / rows);
    return params;
  };
  return std::make_unique<MultinomialNbBinaryModel>(
      make(pos_totals, pos_count), make(neg_totals, neg_count));
}

}  // namespace wordlab
