#include "wordlab/learners/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wordlab {

const TreeNode& Tree::leaf_for(std::span<const double> x) const {
  const TreeNode* node = &nodes[0];
  while (!node->is_leaf()) {
    node = x[node->feature] <= node->threshold ? &nodes[node->left]
                                               : &nodes[node->right];
  }
  return *node;
}

uint32_t Tree::depth() const {
  // Depth of each node is known once its parent is visited; nodes are
  // stored parent-before-child.
  std::vector<uint32_t> depth(nodes.size(), 0);
  uint32_t max_depth = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf()) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
      max_depth = std::max(max_depth, depth[i] + 1);
    }
  }
  return max_depth;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitChoice {
  double score = kInf;
  int32_t feature = -1;
  double threshold = 0.0;

  void consider(double score_in, int32_t feature_in, double threshold_in) {
    if (score_in < score ||
        (score_in == score &&
         (feature_in < feature ||
          (feature_in == feature && threshold_in < threshold)))) {
      score = score_in;
      feature = feature_in;
      threshold = threshold_in;
    }
  }
};

// Midpoint threshold; falls back to the lower value when rounding would
// swallow the upper one, keeping the evaluated partition.
double split_threshold(double lo, double hi) {
  const double mid = lo + 0.5 * (hi - lo);
  return mid < hi ? mid : lo;
}

// Shared per-tree scratch: candidate feature sampling.
struct FeatureSampler {
  std::vector<uint32_t> features;
  uint32_t sample_count;

  FeatureSampler(uint32_t n, uint32_t max_features)
      : features(n), sample_count(max_features == 0 ? n
                                                    : std::min(max_features, n)) {
    std::iota(features.begin(), features.end(), 0);
  }

  // First sample_count entries become the node's candidates.
  std::span<const uint32_t> sample(Rng& rng) {
    if (sample_count >= features.size()) return features;
    for (uint32_t i = 0; i < sample_count; ++i) {
      uint32_t j = i + static_cast<uint32_t>(
                           rng.uniform_below(features.size() - i));
      std::swap(features[i], features[j]);
    }
    return {features.data(), sample_count};
  }
};

// ---------------------------------------------------------------------
// Multi-label classification builder. Impurity is the mean per-word Gini;
// for a candidate side with row count c and per-word positive counts c_j
// the weighted impurity reduces to (c*S1 - S2)/c with S1 = sum c_j and
// S2 = sum c_j^2, which one pass maintains in O(labels per row).
// ---------------------------------------------------------------------
struct MultilabelBuilder {
  const Matrix& X;
  const TreeParams& params;
  Rng& rng;
  uint32_t m;

  // CSR of positive word ids per global row.
  std::vector<uint32_t> offsets;
  std::vector<uint32_t> ids;

  std::vector<TreeNode> nodes;
  std::vector<uint32_t> rows;
  std::vector<uint32_t> counts;       // per-word counts of the current node
  std::vector<uint32_t> left_counts;  // scan scratch
  std::vector<uint32_t> touched;
  std::vector<std::pair<double, uint32_t>> sorted;
  FeatureSampler sampler;
  uint32_t depth_limit;

  MultilabelBuilder(const Matrix& x, const LabelMatrix& y,
                    std::span<const uint32_t> node_rows,
                    const TreeParams& params_in, Rng& rng_in)
      : X(x),
        params(params_in),
        rng(rng_in),
        m(static_cast<uint32_t>(y.label_count())),
        rows(node_rows.begin(), node_rows.end()),
        counts(m, 0),
        left_counts(m, 0),
        sampler(static_cast<uint32_t>(x.cols()), params_in.max_features),
        depth_limit(params_in.max_depth) {
    offsets.assign(y.rows() + 1, 0);
    for (size_t i = 0; i < y.rows(); ++i) {
      uint32_t row_total = 0;
      for (size_t j = 0; j < m; ++j) row_total += y.get(i, j);
      offsets[i + 1] = offsets[i] + row_total;
    }
    ids.resize(offsets.back());
    for (size_t i = 0, at = 0; i < y.rows(); ++i) {
      for (uint32_t j = 0; j < m; ++j) {
        if (y.get(i, j)) ids[at++] = j;
      }
    }
  }

  std::span<const uint32_t> row_ids(uint32_t row) const {
    return {ids.data() + offsets[row], offsets[row + 1] - offsets[row]};
  }

  int32_t build(uint32_t begin, uint32_t end, uint32_t depth) {
    const uint32_t count = end - begin;

    // Node label stats.
    std::fill(counts.begin(), counts.end(), 0);
    uint64_t s1 = 0, s2 = 0;
    for (uint32_t i = begin; i < end; ++i) {
      for (uint32_t id : row_ids(rows[i])) ++counts[id];
    }
    for (uint32_t j = 0; j < m; ++j) {
      s1 += counts[j];
      s2 += static_cast<uint64_t>(counts[j]) * counts[j];
    }
    const bool pure =
        static_cast<uint64_t>(count) * s1 == s2;  // every c_j in {0, count}

    SplitChoice best;
    if (!pure && depth < depth_limit && count >= 2 * params.min_leaf) {
      // counts[] stays valid during the scans below.
      for (uint32_t f : sampler.sample(rng)) {
        if (params.mode == ThresholdMode::best) {
          scan_best(begin, end, f, count, s1, s2, best);
        } else {
          scan_random(begin, end, f, count, s1, s2, best);
        }
      }
    }

    if (best.feature < 0) {
      return emit_leaf(begin, end, count);
    }

    const int32_t node_index = static_cast<int32_t>(nodes.size());
    nodes.emplace_back();
    nodes[node_index].feature = best.feature;
    nodes[node_index].threshold = best.threshold;

    auto mid_it = std::partition(
        rows.begin() + begin, rows.begin() + end, [&](uint32_t row) {
          return X(row, best.feature) <= best.threshold;
        });
    const uint32_t mid = static_cast<uint32_t>(mid_it - rows.begin());
    const int32_t left = build(begin, mid, depth + 1);
    const int32_t right = build(mid, end, depth + 1);
    nodes[node_index].left = left;
    nodes[node_index].right = right;
    return node_index;
  }

  int32_t emit_leaf(uint32_t begin, uint32_t end, uint32_t count) {
    // counts[] may be stale after child recursion; recompute.
    touched.clear();
    for (uint32_t i = begin; i < end; ++i) {
      for (uint32_t id : row_ids(rows[i])) {
        if (left_counts[id]++ == 0) touched.push_back(id);
      }
    }
    std::sort(touched.begin(), touched.end());
    const int32_t node_index = static_cast<int32_t>(nodes.size());
    nodes.emplace_back();
    TreeNode& leaf = nodes[node_index];
    leaf.fractions.reserve(touched.size());
    for (uint32_t id : touched) {
      leaf.fractions.emplace_back(
          id, static_cast<float>(static_cast<double>(left_counts[id]) / count));
      left_counts[id] = 0;
    }
    return node_index;
  }

  void scan_best(uint32_t begin, uint32_t end, uint32_t feature,
                 uint32_t count, uint64_t s1, uint64_t s2, SplitChoice& best) {
    sorted.clear();
    for (uint32_t i = begin; i < end; ++i) {
      sorted.emplace_back(X(rows[i], feature), rows[i]);
    }
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first) return;

    uint64_t s1l = 0, s2l = 0;
    uint32_t nl = 0;
    for (uint32_t i = 0; i + 1 < count; ++i) {
      const uint32_t row = sorted[i].second;
      for (uint32_t id : row_ids(row)) {
        s2l += 2ull * left_counts[id] + 1;
        ++left_counts[id];
        ++s1l;
      }
      ++nl;
      if (sorted[i + 1].first > sorted[i].first && nl >= params.min_leaf &&
          count - nl >= params.min_leaf) {
        const uint32_t nr = count - nl;
        const uint64_t s1r = s1 - s1l, s2r = s2 - s2l;
        const double score =
            (static_cast<double>(nl) * s1l - static_cast<double>(s2l)) / nl +
            (static_cast<double>(nr) * s1r - static_cast<double>(s2r)) / nr;
        best.consider(score, static_cast<int32_t>(feature),
                      split_threshold(sorted[i].first, sorted[i + 1].first));
      }
    }
    // Zero the scratch counters touched by this scan.
    for (uint32_t i = 0; i + 1 < count; ++i) {
      for (uint32_t id : row_ids(sorted[i].second)) left_counts[id] = 0;
    }
  }

  void scan_random(uint32_t begin, uint32_t end, uint32_t feature,
                   uint32_t count, uint64_t s1, uint64_t s2,
                   SplitChoice& best) {
    double lo = kInf, hi = -kInf;
    for (uint32_t i = begin; i < end; ++i) {
      const double v = X(rows[i], feature);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!(hi > lo)) return;
    double threshold = lo + rng.uniform01() * (hi - lo);
    if (threshold >= hi) threshold = lo;

    uint64_t s1l = 0, s2l = 0;
    uint32_t nl = 0;
    for (uint32_t i = begin; i < end; ++i) {
      if (X(rows[i], feature) <= threshold) {
        for (uint32_t id : row_ids(rows[i])) {
          s2l += 2ull * left_counts[id] + 1;
          ++left_counts[id];
          ++s1l;
        }
        ++nl;
      }
    }
    const uint32_t nr = count - nl;
    if (nl >= params.min_leaf && nr >= params.min_leaf && nl > 0 && nr > 0) {
      const uint64_t s1r = s1 - s1l, s2r = s2 - s2l;
      const double score =
          (static_cast<double>(nl) * s1l - static_cast<double>(s2l)) / nl +
          (static_cast<double>(nr) * s1r - static_cast<double>(s2r)) / nr;
      best.consider(score, static_cast<int32_t>(feature), threshold);
    }
    for (uint32_t i = begin; i < end; ++i) {
      if (X(rows[i], feature) <= threshold) {
        for (uint32_t id : row_ids(rows[i])) left_counts[id] = 0;
      }
    }
  }
};

// ---------------------------------------------------------------------
// Regression builder: variance-reduction splits, mean-valued leaves.
// ---------------------------------------------------------------------
struct RegressionBuilder {
  const Matrix& X;
  std::span<const double> targets;  // indexed by global row
  const TreeParams& params;
  Rng& rng;

  std::vector<TreeNode> nodes;
  std::vector<uint32_t> rows;
  std::vector<std::pair<double, uint32_t>> sorted;
  FeatureSampler sampler;
  uint32_t depth_limit;

  RegressionBuilder(const Matrix& x, std::span<const double> t,
                    std::span<const uint32_t> node_rows,
                    const TreeParams& params_in, Rng& rng_in)
      : X(x),
        targets(t),
        params(params_in),
        rng(rng_in),
        rows(node_rows.begin(), node_rows.end()),
        sampler(static_cast<uint32_t>(x.cols()), params_in.max_features),
        depth_limit(params_in.max_depth) {}

  int32_t build(uint32_t begin, uint32_t end, uint32_t depth) {
    const uint32_t count = end - begin;
    double sum = 0.0, sum_sq = 0.0;
    for (uint32_t i = begin; i < end; ++i) {
      sum += targets[rows[i]];
      sum_sq += targets[rows[i]] * targets[rows[i]];
    }
    const double sse = sum_sq - sum * sum / count;

    SplitChoice best;
    if (sse > 1e-12 && depth < depth_limit && count >= 2 * params.min_leaf) {
      for (uint32_t f : sampler.sample(rng)) {
        if (params.mode == ThresholdMode::best) {
          scan_best(begin, end, f, count, sum, sum_sq, best);
        } else {
          scan_random(begin, end, f, count, sum, sum_sq, best);
        }
      }
    }

    const int32_t node_index = static_cast<int32_t>(nodes.size());
    nodes.emplace_back();
    if (best.feature < 0) {
      nodes[node_index].value = sum / count;
      return node_index;
    }
    nodes[node_index].feature = best.feature;
    nodes[node_index].threshold = best.threshold;
    auto mid_it = std::partition(
        rows.begin() + begin, rows.begin() + end, [&](uint32_t row) {
          return X(row, best.feature) <= best.threshold;
        });
    const uint32_t mid = static_cast<uint32_t>(mid_it - rows.begin());
    const int32_t left = build(begin, mid, depth + 1);
    const int32_t right = build(mid, end, depth + 1);
    nodes[node_index].left = left;
    nodes[node_index].right = right;
    return node_index;
  }

  void scan_best(uint32_t begin, uint32_t end, uint32_t feature,
                 uint32_t count, double sum, double sum_sq,
                 SplitChoice& best) {
    sorted.clear();
    for (uint32_t i = begin; i < end; ++i) {
      sorted.emplace_back(X(rows[i], feature), rows[i]);
    }
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first) return;

    double sum_l = 0.0, sum_sq_l = 0.0;
    uint32_t nl = 0;
    for (uint32_t i = 0; i + 1 < count; ++i) {
      const double t = targets[sorted[i].second];
      sum_l += t;
      sum_sq_l += t * t;
      ++nl;
      if (sorted[i + 1].first > sorted[i].first && nl >= params.min_leaf &&
          count - nl >= params.min_leaf) {
        const uint32_t nr = count - nl;
        const double sum_r = sum - sum_l, sum_sq_r = sum_sq - sum_sq_l;
        const double score = (sum_sq_l - sum_l * sum_l / nl) +
                             (sum_sq_r - sum_r * sum_r / nr);
        best.consider(score, static_cast<int32_t>(feature),
                      split_threshold(sorted[i].first, sorted[i + 1].first));
      }
    }
  }

  void scan_random(uint32_t begin, uint32_t end, uint32_t feature,
                   uint32_t count, double sum, double sum_sq,
                   SplitChoice& best) {
    double lo = kInf, hi = -kInf;
    for (uint32_t i = begin; i < end; ++i) {
      const double v = X(rows[i], feature);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!(hi > lo)) return;
    double threshold = lo + rng.uniform01() * (hi - lo);
    if (threshold >= hi) threshold = lo;

    double sum_l = 0.0, sum_sq_l = 0.0;
    uint32_t nl = 0;
    for (uint32_t i = begin; i < end; ++i) {
      if (X(rows[i], feature) <= threshold) {
        const double t = targets[rows[i]];
        sum_l += t;
        sum_sq_l += t * t;
        ++nl;
      }
    }
    const uint32_t nr = count - nl;
    if (nl >= params.min_leaf && nr >= params.min_leaf && nl > 0 && nr > 0) {
      const double sum_r = sum - sum_l, sum_sq_r = sum_sq - sum_sq_l;
      const double score =
          (sum_sq_l - sum_l * sum_l / nl) + (sum_sq_r - sum_r * sum_r / nr);
      best.consider(score, static_cast<int32_t>(feature), threshold);
    }
  }
};

// ---------------------------------------------------------------------
// Weighted binary builder for boosting stumps: weighted Gini splits and
// weighted-majority sign leaves (ties predict -1).
// ---------------------------------------------------------------------
struct WeightedBinaryBuilder {
  const Matrix& X;
  std::span<const int8_t> y;
  std::span<const double> sample_weights;
  const TreeParams& params;
  Rng& rng;

  std::vector<TreeNode> nodes;
  std::vector<uint32_t> rows;
  std::vector<std::pair<double, uint32_t>> sorted;
  FeatureSampler sampler;
  uint32_t depth_limit;

  WeightedBinaryBuilder(const Matrix& x, std::span<const int8_t> y_in,
                        std::span<const double> w,
                        std::span<const uint32_t> node_rows,
                        const TreeParams& params_in, Rng& rng_in)
      : X(x),
        y(y_in),
        sample_weights(w),
        params(params_in),
        rng(rng_in),
        rows(node_rows.begin(), node_rows.end()),
        sampler(static_cast<uint32_t>(x.cols()), params_in.max_features),
        depth_limit(params_in.max_depth) {}

  int32_t build(uint32_t begin, uint32_t end, uint32_t depth) {
    const uint32_t count = end - begin;
    double w_pos = 0.0, w_neg = 0.0;
    for (uint32_t i = begin; i < end; ++i) {
      (y[rows[i]] > 0 ? w_pos : w_neg) += sample_weights[rows[i]];
    }

    SplitChoice best;
    if (w_pos > 0.0 && w_neg > 0.0 && depth < depth_limit &&
        count >= 2 * params.min_leaf) {
      for (uint32_t f : sampler.sample(rng)) {
        scan_best(begin, end, f, count, w_pos, w_neg, best);
      }
    }

    const int32_t node_index = static_cast<int32_t>(nodes.size());
    nodes.emplace_back();
    if (best.feature < 0) {
      nodes[node_index].value = w_pos > w_neg ? 1.0 : -1.0;
      return node_index;
    }
    nodes[node_index].feature = best.feature;
    nodes[node_index].threshold = best.threshold;
    auto mid_it = std::partition(
        rows.begin() + begin, rows.begin() + end, [&](uint32_t row) {
          return X(row, best.feature) <= best.threshold;
        });
    const uint32_t mid = static_cast<uint32_t>(mid_it - rows.begin());
    const int32_t left = build(begin, mid, depth + 1);
    const int32_t right = build(mid, end, depth + 1);
    nodes[node_index].left = left;
    nodes[node_index].right = right;
    return node_index;
  }

  void scan_best(uint32_t begin, uint32_t end, uint32_t feature,
                 uint32_t count, double w_pos, double w_neg,
                 SplitChoice& best) {
    sorted.clear();
    for (uint32_t i = begin; i < end; ++i) {
      sorted.emplace_back(X(rows[i], feature), rows[i]);
    }
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first) return;

    double pos_l = 0.0, neg_l = 0.0;
    uint32_t nl = 0;
    for (uint32_t i = 0; i + 1 < count; ++i) {
      const uint32_t row = sorted[i].second;
      (y[row] > 0 ? pos_l : neg_l) += sample_weights[row];
      ++nl;
      if (sorted[i + 1].first > sorted[i].first && nl >= params.min_leaf &&
          count - nl >= params.min_leaf) {
        const double pos_r = w_pos - pos_l, neg_r = w_neg - neg_l;
        const double wl = pos_l + neg_l, wr = pos_r + neg_r;
        double score = 0.0;
        if (wl > 0.0) score += wl - (pos_l * pos_l + neg_l * neg_l) / wl;
        if (wr > 0.0) score += wr - (pos_r * pos_r + neg_r * neg_r) / wr;
        best.consider(score, static_cast<int32_t>(feature),
                      split_threshold(sorted[i].first, sorted[i + 1].first));
      }
    }
  }
};

std::vector<uint32_t> all_rows(size_t count) {
  std::vector<uint32_t> rows(count);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

Tree fit_multilabel_tree(const Matrix& X, const LabelMatrix& Y,
                         std::span<const uint32_t> rows,
                         const TreeParams& params, Rng& rng) {
  if (rows.empty()) throw parameter_error("tree fit: no rows");
  if (X.rows() != Y.rows()) throw shape_error("tree fit: row mismatch");
  MultilabelBuilder builder(X, Y, rows, params, rng);
  builder.build(0, static_cast<uint32_t>(rows.size()), 0);
  Tree tree;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

Tree fit_regression_tree(const Matrix& X, std::span<const double> targets,
                         std::span<const uint32_t> rows,
                         const TreeParams& params, Rng& rng) {
  if (rows.empty()) throw parameter_error("tree fit: no rows");
  RegressionBuilder builder(X, targets, rows, params, rng);
  builder.build(0, static_cast<uint32_t>(rows.size()), 0);
  Tree tree;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

Tree fit_weighted_binary_tree(const Matrix& X, std::span<const int8_t> y,
                              std::span<const double> sample_weights,
                              std::span<const uint32_t> rows,
                              const TreeParams& params, Rng& rng) {
  if (rows.empty()) throw parameter_error("tree fit: no rows");
  WeightedBinaryBuilder builder(X, y, sample_weights, rows, params, rng);
  builder.build(0, static_cast<uint32_t>(rows.size()), 0);
  Tree tree;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

namespace {

class DecisionTreeModel : public MultiLabelModel {
public:
  DecisionTreeModel(Tree tree, size_t m, size_t n)
      : tree_(std::move(tree)), m_(m), n_(n) {}

  Matrix predict_scores(const Matrix& X) const override {
    if (X.cols() != n_) throw shape_error("tree predict: dimension mismatch");
    Matrix scores(X.rows(), m_);
    for (size_t i = 0; i < X.rows(); ++i) {
      for (const auto& [id, fraction] : tree_.leaf_for(X.row(i)).fractions) {
        scores(i, id) = fraction;
      }
    }
    return scores;
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }
  size_t label_count() const override { return m_; }
  size_t feature_count() const override { return n_; }

  const Tree& tree() const { return tree_; }

private:
  Tree tree_;
  size_t m_, n_;
};

}  // namespace

std::unique_ptr<MultiLabelModel> decision_tree_fit(const Matrix& X,
                                                   const LabelMatrix& Y,
                                                   const TreeParams& params,
                                                   uint64_t seed) {
  Rng rng(seed);
  Tree tree = fit_multilabel_tree(X, Y, all_rows(X.rows()), params, rng);
  return std::make_unique<DecisionTreeModel>(std::move(tree), Y.label_count(),
                                             X.cols());
}

Matrix ForestModel::predict_scores(const Matrix& X) const {
  if (X.cols() != n_) throw shape_error("forest predict: dimension mismatch");
  Matrix scores(X.rows(), m_);
  for (size_t i = 0; i < X.rows(); ++i) {
    auto x = X.row(i);
    for (const Tree& tree : trees_) {
      for (const auto& [id, fraction] : tree.leaf_for(x).fractions) {
        scores(i, id) += fraction;
      }
    }
    for (size_t j = 0; j < m_; ++j) scores(i, j) /= trees_.size();
  }
  return scores;
}

std::unique_ptr<MultiLabelModel> forest_fit(const Matrix& X,
                                            const LabelMatrix& Y,
                                            uint32_t tree_count, bool bootstrap,
                                            const TreeParams& params,
                                            uint64_t seed) {
  if (tree_count < 1) throw parameter_error("forest: tree_count must be >= 1");
  if (X.rows() == 0) throw parameter_error("forest: empty training set");
  std::vector<Tree> trees;
  trees.reserve(tree_count);
  const std::vector<uint32_t> base = all_rows(X.rows());
  std::vector<uint32_t> sampled(X.rows());
  for (uint32_t t = 0; t < tree_count; ++t) {
    Rng rng(derive_seed(seed, "tree", t));
    if (bootstrap) {
      for (size_t i = 0; i < sampled.size(); ++i) {
        sampled[i] = static_cast<uint32_t>(rng.uniform_below(X.rows()));
      }
      trees.push_back(fit_multilabel_tree(X, Y, sampled, params, rng));
    } else {
      trees.push_back(fit_multilabel_tree(X, Y, base, params, rng));
    }
  }
  return std::make_unique<ForestModel>(std::move(trees), Y.label_count(),
                                       X.cols());
}

double AdaBoostBinaryModel::score(std::span<const double> x) const {
  double margin = 0.0;
  for (size_t t = 0; t < stumps_.size(); ++t) {
    margin += alphas_[t] * stumps_[t].predict_value(x);
  }
  return margin;
}

std::unique_ptr<BinaryModel> adaboost_fit_binary(
    const Matrix& X, const std::vector<uint8_t>& y, uint32_t stages,
    uint32_t stump_depth, uint64_t seed, AdaBoostDiagnostics* diagnostics) {
  const size_t rows = X.rows();
  if (rows == 0) throw parameter_error("adaboost: empty training set");

  std::vector<int8_t> labels(rows);
  for (size_t i = 0; i < rows; ++i) labels[i] = y[i] ? 1 : -1;
  std::vector<double> weights(rows, 1.0 / rows);
  const std::vector<uint32_t> base = all_rows(rows);
  TreeParams stump_params;
  stump_params.max_depth = stump_depth;

  std::vector<Tree> stumps;
  std::vector<double> alphas;
  std::vector<int8_t> predicted(rows);
  for (uint32_t t = 0; t < stages; ++t) {
    Rng rng(derive_seed(seed, "stage", t));
    Tree stump =
        fit_weighted_binary_tree(X, labels, weights, base, stump_params, rng);
    double err = 0.0;
    for (size_t i = 0; i < rows; ++i) {
      predicted[i] = stump.predict_value(X.row(i)) > 0.0 ? 1 : -1;
      if (predicted[i] != labels[i]) err += weights[i];
    }
    if (diagnostics) diagnostics->stage_errors.push_back(err);
    if (err >= 0.5) break;  // no better than chance: reject and halt
    const double bounded = std::max(err, 1e-12);
    const double alpha = 0.5 * std::log((1.0 - bounded) / bounded);
    stumps.push_back(std::move(stump));
    alphas.push_back(alpha);
    if (err <= 0.0) {
      if (diagnostics) diagnostics->weight_sums.push_back(1.0);
      break;  // perfect stage, nothing left to reweight
    }
    double sum = 0.0;
    for (size_t i = 0; i < rows; ++i) {
      weights[i] *= std::exp(-alpha * labels[i] * predicted[i]);
      sum += weights[i];
    }
    for (double& w : weights) w /= sum;
    if (diagnostics) {
      double check = 0.0;
      for (double w : weights) check += w;
      diagnostics->weight_sums.push_back(check);
    }
  }
  return std::make_unique<AdaBoostBinaryModel>(std::move(stumps),
                                               std::move(alphas));
}

std::unique_ptr<BinaryModel> AdaBoostTrainer::fit(const Matrix& X,
                                                  const std::vector<uint8_t>& y,
                                                  uint64_t seed) const {
  return adaboost_fit_binary(X, y, stages_, depth_, seed);
}

double GradBoostBinaryModel::raw_score(std::span<const double> x) const {
  double f = base_;
  for (const Tree& tree : trees_) f += lr_ * tree.predict_value(x);
  return f;
}

double GradBoostBinaryModel::score(std::span<const double> x) const {
  return 1.0 / (1.0 + std::exp(-raw_score(x)));
}

std::unique_ptr<BinaryModel> gradboost_fit_binary(const Matrix& X,
                                                  const std::vector<uint8_t>& y,
                                                  uint32_t stages, double lr,
                                                  uint32_t depth,
                                                  uint64_t seed) {
  const size_t rows = X.rows();
  if (rows == 0) throw parameter_error("gradboost: empty training set");
  size_t positives = 0;
  for (uint8_t v : y) positives += v;
  if (positives == 0 || positives == rows) {
    throw parameter_error("gradboost: both classes required");
  }

  const double rate = static_cast<double>(positives) / rows;
  const double base = std::log(rate / (1.0 - rate));
  std::vector<double> f(rows, base);
  std::vector<double> residuals(rows);
  const std::vector<uint32_t> rows_base = all_rows(rows);
  TreeParams tree_params;
  tree_params.max_depth = depth;

  std::vector<Tree> trees;
  trees.reserve(stages);
  for (uint32_t s = 0; s < stages; ++s) {
    for (size_t i = 0; i < rows; ++i) {
      residuals[i] = (y[i] ? 1.0 : 0.0) - 1.0 / (1.0 + std::exp(-f[i]));
    }
    Rng rng(derive_seed(seed, "stage", s));
    Tree tree =
        fit_regression_tree(X, residuals, rows_base, tree_params, rng);
    for (size_t i = 0; i < rows; ++i) {
      f[i] += lr * tree.predict_value(X.row(i));
    }
    trees.push_back(std::move(tree));
  }
  return std::make_unique<GradBoostBinaryModel>(base, lr, std::move(trees));
}

std::unique_ptr<BinaryModel> GradBoostTrainer::fit(
    const Matrix& X, const std::vector<uint8_t>& y, uint64_t seed) const {
  return gradboost_fit_binary(X, y, stages_, lr_, depth_, seed);
}

}  // namespace wordlab
