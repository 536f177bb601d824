#pragma once

#include "wordlab/learner.hpp"

namespace wordlab {

// Native multi-label k-nearest-neighbors. Stores the training data; word j
// is predicted when strictly more than half of the k_neighbors nearest
// stored rows carry it. Distance ties break toward the lower stored-row
// index. Scores are neighbor-vote fractions in [0,1].
class KnnModel : public MultiLabelModel {
public:
  KnnModel(Matrix X, LabelMatrix Y, uint32_t k_neighbors);

  Matrix predict_scores(const Matrix& X) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }
  size_t label_count() const override { return labels_.label_count(); }
  size_t feature_count() const override { return stored_.cols(); }

  const Matrix& stored() const { return stored_; }

private:
  Matrix stored_;
  LabelMatrix labels_;
  uint32_t k_neighbors_;
};

std::unique_ptr<MultiLabelModel> knn_fit(const Matrix& X, const LabelMatrix& Y,
                                         uint32_t k_neighbors);

// Binary form for one-vs-rest: vote fraction for the positive class.
class KnnBinaryTrainer : public BinaryTrainer {
public:
  explicit KnnBinaryTrainer(uint32_t k_neighbors) : k_neighbors_(k_neighbors) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  uint32_t k_neighbors_;
};

// Positive/negative class centroids; the score is the margin
// d(x, negative) - d(x, positive), so equidistant points predict negative.
class CentroidBinaryModel : public BinaryModel {
public:
  CentroidBinaryModel(std::vector<double> pos, std::vector<double> neg)
      : positive_(std::move(pos)), negative_(std::move(neg)) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override { return ScoreKind::margin; }

  const std::vector<double>& positive_centroid() const { return positive_; }
  const std::vector<double>& negative_centroid() const { return negative_; }

private:
  std::vector<double> positive_;
  std::vector<double> negative_;
};

class CentroidBinaryTrainer : public BinaryTrainer {
public:
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::margin; }
};

}  // namespace wordlab
