#include "wordlab/learners/neighbors.hpp"

#include <algorithm>
#include <cmath>

namespace wordlab {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return sum;
}

// Indices of the k nearest stored rows, ties toward lower index.
std::vector<uint32_t> nearest_rows(const Matrix& stored,
                                   std::span<const double> x, uint32_t k) {
  std::vector<std::pair<double, uint32_t>> dist(stored.rows());
  for (size_t i = 0; i < stored.rows(); ++i) {
    dist[i] = {squared_distance(stored.row(i), x), static_cast<uint32_t>(i)};
  }
  std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
  std::vector<uint32_t> out(k);
  for (uint32_t i = 0; i < k; ++i) out[i] = dist[i].second;
  return out;
}

}  // namespace

KnnModel::KnnModel(Matrix X, LabelMatrix Y, uint32_t k_neighbors)
    : stored_(std::move(X)), labels_(std::move(Y)), k_neighbors_(k_neighbors) {
  if (k_neighbors_ < 1 || k_neighbors_ > stored_.rows()) {
    throw parameter_error("knn: k_neighbors must be in [1, stored rows]");
  }
  if (stored_.rows() != labels_.rows()) {
    throw shape_error("knn: feature/label row mismatch");
  }
}

Matrix KnnModel::predict_scores(const Matrix& X) const {
  if (X.cols() != stored_.cols()) throw shape_error("knn: dimension mismatch");
  const size_t m = labels_.label_count();
  Matrix scores(X.rows(), m);
  for (size_t i = 0; i < X.rows(); ++i) {
    for (uint32_t row : nearest_rows(stored_, X.row(i), k_neighbors_)) {
      for (size_t j = 0; j < m; ++j) {
        scores(i, j) += labels_.get(row, j);
      }
    }
    for (size_t j = 0; j < m; ++j) scores(i, j) /= k_neighbors_;
  }
  return scores;
}

std::unique_ptr<MultiLabelModel> knn_fit(const Matrix& X, const LabelMatrix& Y,
                                         uint32_t k_neighbors) {
  return std::make_unique<KnnModel>(X, Y, k_neighbors);
}

namespace {

class KnnBinaryModel : public BinaryModel {
public:
  KnnBinaryModel(Matrix X, std::vector<uint8_t> y, uint32_t k)
      : stored_(std::move(X)), y_(std::move(y)), k_(k) {}

  double score(std::span<const double> x) const override {
    uint32_t votes = 0;
    for (uint32_t row : nearest_rows(stored_, x, k_)) votes += y_[row];
    return static_cast<double>(votes) / k_;
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  Matrix stored_;
  std::vector<uint8_t> y_;
  uint32_t k_;
};

}  // namespace

std::unique_ptr<BinaryModel> KnnBinaryTrainer::fit(
    const Matrix& X, const std::vector<uint8_t>& y, uint64_t) const {
  if (k_neighbors_ < 1 || k_neighbors_ > X.rows()) {
    throw parameter_error("knn: k_neighbors must be in [1, stored rows]");
  }
  return std::make_unique<KnnBinaryModel>(X, y, k_neighbors_);
}

double CentroidBinaryModel::score(std::span<const double> x) const {
  const double d_pos = std::sqrt(squared_distance(positive_, x));
  const double d_neg = std::sqrt(squared_distance(negative_, x));
  return d_neg - d_pos;
}

std::unique_ptr<BinaryModel> CentroidBinaryTrainer::fit(
    const Matrix& X, const std::vector<uint8_t>& y, uint64_t) const {
  const size_t n = X.cols();
  std::vector<double> pos(n, 0.0), neg(n, 0.0);
  size_t pos_count = 0, neg_count = 0;
  for (size_t i = 0; i < X.rows(); ++i) {
    auto row = X.row(i);
    auto& target = y[i] ? pos : neg;
    for (size_t j = 0; j < n; ++j) target[j] += row[j];
    (y[i] ? pos_count : neg_count)++;
  }
  if (pos_count == 0 || neg_count == 0) {
    throw parameter_error("centroid: both classes required");
  }
  for (size_t j = 0; j < n; ++j) {
    pos[j] /= pos_count;
    neg[j] /= neg_count;
  }
  return std::make_unique<CentroidBinaryModel>(std::move(pos), std::move(neg));
}

}  // namespace wordlab
