#pragma once

#include "wordlab/learner.hpp"

namespace wordlab {

// Gaussian naive Bayes, binary form. Per-feature mean/variance for each
// class plus class priors; the score is the positive posterior computed in
// the log domain with log-sum-exp. Variances get a floor of
// var_floor_scale * (largest pooled feature variance) so constant features
// survive.
class GaussianNbBinaryModel : public BinaryModel {
public:
  struct ClassStats {
    std::vector<double> mean;
    std::vector<double> var;
    double log_prior = 0.0;
  };

  GaussianNbBinaryModel(ClassStats pos, ClassStats neg)
      : pos_(std::move(pos)), neg_(std::move(neg)) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

  const ClassStats& positive() const { return pos_; }
  const ClassStats& negative() const { return neg_; }

private:
  double log_likelihood(const ClassStats& s, std::span<const double> x) const;
  ClassStats pos_, neg_;
};

class GaussianNbTrainer : public BinaryTrainer {
public:
  explicit GaussianNbTrainer(double var_floor_scale = 1e-9)
      : var_floor_scale_(var_floor_scale) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  double var_floor_scale_;
};

// Multinomial naive Bayes over nonnegative fractional counts with additive
// smoothing alpha. Requires nonnegative features.
class MultinomialNbBinaryModel : public BinaryModel {
public:
  struct ClassParams {
    std::vector<double> log_theta;  // log feature probabilities, sum(theta)=1
    double log_prior = 0.0;
  };

  MultinomialNbBinaryModel(ClassParams pos, ClassParams neg)
      : pos_(std::move(pos)), neg_(std::move(neg)) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

  const ClassParams& positive() const { return pos_; }
  const ClassParams& negative() const { return neg_; }

private:
  ClassParams pos_, neg_;
};

class MultinomialNbTrainer : public BinaryTrainer {
public:
  explicit MultinomialNbTrainer(double alpha = 1.0) : alpha_(alpha) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  double alpha_;
};

}  // namespace wordlab
