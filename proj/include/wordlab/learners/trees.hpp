#pragma once

#include <cstdint>
#include <span>

#include "wordlab/learner.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

enum class ThresholdMode { best, random };

struct TreeNode {
  int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  // Leaf payloads: per-word positive fractions (classification, sparse,
  // sorted by word id) or a single value (regression / sign leaves).
  std::vector<std::pair<uint32_t, float>> fractions;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  // Walks x to its leaf.
  const TreeNode& leaf_for(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const {
    return leaf_for(x).value;
  }
  // Longest root-to-leaf comparison count.
  uint32_t depth() const;

  bool operator==(const Tree&) const = default;
};

struct TreeParams {
  // Comparisons allowed per path; 0 forces a root leaf.
  uint32_t max_depth = UINT32_MAX;
  uint32_t min_leaf = 1;
  uint32_t max_features = 0;  // 0 = all features
  ThresholdMode mode = ThresholdMode::best;
};

// Greedy recursive partitioning on mean per-word Gini impurity. `rows`
// selects the training subset (repeats allowed, for bootstrap). Split ties
// break toward the lowest feature index, then the lowest threshold.
Tree fit_multilabel_tree(const Matrix& X, const LabelMatrix& Y,
                         std::span<const uint32_t> rows,
                         const TreeParams& params, Rng& rng);

// Variance-reduction regression tree; leaf value is the target mean.
Tree fit_regression_tree(const Matrix& X, std::span<const double> targets,
                         std::span<const uint32_t> rows,
                         const TreeParams& params, Rng& rng);

// Weight-aware binary tree over labels in {-1,+1}; split criterion is
// weighted Gini and the leaf value is the weighted majority sign (ties
// predict -1). Depth 1 gives the boosting stump.
Tree fit_weighted_binary_tree(const Matrix& X, std::span<const int8_t> y,
                              std::span<const double> sample_weights,
                              std::span<const uint32_t> rows,
                              const TreeParams& params, Rng& rng);

// Single multi-label decision tree fitted on all features.
std::unique_ptr<MultiLabelModel> decision_tree_fit(const Matrix& X,
                                                   const LabelMatrix& Y,
                                                   const TreeParams& params,
                                                   uint64_t seed);

// Tree ensemble: word positive when the mean per-tree positive fraction
// exceeds 0.5. bootstrap + best thresholds gives the random-forest
// variant; full sample + random thresholds gives the extremely-randomized
// variant. Per-tree RNG substream: derive_seed(seed, "tree", index).
class ForestModel : public MultiLabelModel {
public:
  ForestModel(std::vector<Tree> trees, size_t m, size_t n)
      : trees_(std::move(trees)), m_(m), n_(n) {}

  Matrix predict_scores(const Matrix& X) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }
  size_t label_count() const override { return m_; }
  size_t feature_count() const override { return n_; }

  const std::vector<Tree>& trees() const { return trees_; }

private:
  std::vector<Tree> trees_;
  size_t m_, n_;
};

std::unique_ptr<MultiLabelModel> forest_fit(const Matrix& X,
                                            const LabelMatrix& Y,
                                            uint32_t tree_count, bool bootstrap,
                                            const TreeParams& params,
                                            uint64_t seed);

// Discrete boosting over weighted stumps; the score is the weighted vote
// margin. Stages stop early on a perfect stump (it is kept) or on weighted
// error >= 0.5 (the stage is rejected).
class AdaBoostBinaryModel : public BinaryModel {
public:
  AdaBoostBinaryModel(std::vector<Tree> stumps, std::vector<double> alphas)
      : stumps_(std::move(stumps)), alphas_(std::move(alphas)) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override { return ScoreKind::margin; }

  size_t stage_count() const { return stumps_.size(); }

private:
  std::vector<Tree> stumps_;
  std::vector<double> alphas_;
};

struct AdaBoostDiagnostics {
  std::vector<double> stage_errors;
  std::vector<double> weight_sums;  // sample-weight total after each stage
};

std::unique_ptr<BinaryModel> adaboost_fit_binary(
    const Matrix& X, const std::vector<uint8_t>& y, uint32_t stages,
    uint32_t stump_depth, uint64_t seed,
    AdaBoostDiagnostics* diagnostics = nullptr);

class AdaBoostTrainer : public BinaryTrainer {
public:
  AdaBoostTrainer(uint32_t stages = 100, uint32_t stump_depth = 1)
      : stages_(stages), depth_(stump_depth) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::margin; }

private:
  uint32_t stages_, depth_;
};

// Gradient boosting on the logistic loss: start from the base-rate
// log-odds, fit each regression tree to residuals y - sigmoid(F), advance
// F by lr * tree. The score is sigmoid(F), a probability.
class GradBoostBinaryModel : public BinaryModel {
public:
  GradBoostBinaryModel(double base, double lr, std::vector<Tree> trees)
      : base_(base), lr_(lr), trees_(std::move(trees)) {}

  double score(std::span<const double> x) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

  double raw_score(std::span<const double> x) const;
  size_t stage_count() const { return trees_.size(); }

private:
  double base_;
  double lr_;
  std::vector<Tree> trees_;
};

std::unique_ptr<BinaryModel> gradboost_fit_binary(const Matrix& X,
                                                  const std::vector<uint8_t>& y,
                                                  uint32_t stages, double lr,
                                                  uint32_t depth, uint64_t seed);

class GradBoostTrainer : public BinaryTrainer {
public:
  GradBoostTrainer(uint32_t stages = 100, double lr = 0.1, uint32_t depth = 3)
      : stages_(stages), lr_(lr), depth_(depth) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override;
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  uint32_t stages_;
  double lr_;
  uint32_t depth_;
};

}  // namespace wordlab
