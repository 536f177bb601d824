#include "wordlab/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "wordlab/learners/linear.hpp"
#include "wordlab/learners/mlp.hpp"
#include "wordlab/learners/naive_bayes.hpp"
#include "wordlab/learners/neighbors.hpp"
#include "wordlab/learners/trees.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

namespace {

struct FamilyInfo {
  Family family;
  const char* config_name;
  const char* display_name;
  Preprocessing preprocessing;
  MultilabelMode mode;
};

// Preprocessing assignment: minmax for distance- and count-based families,
// standardization for gradient-trained ones. Native multi-label where the
// family supports it; note the centroid learner reports as OvR.
constexpr FamilyInfo kFamilies[] = {
    {Family::KNeighbors, "kneighbors", "KNeighbors", Preprocessing::minmax,
     MultilabelMode::native},
    {Family::NearestCentroid, "nearest_centroid", "NearestCentroidOvR",
     Preprocessing::minmax, MultilabelMode::one_vs_rest},
    {Family::LogisticRegression, "logistic_regression", "LogisticRegression",
     Preprocessing::standardize, MultilabelMode::one_vs_rest},
    {Family::SGD, "sgd", "SGD", Preprocessing::standardize,
     MultilabelMode::one_vs_rest},
    {Family::PassiveAggressive, "passive_aggressive", "PassiveAggressive",
     Preprocessing::standardize, MultilabelMode::one_vs_rest},
    {Family::GaussianNB, "gaussian_nb", "GaussianNB", Preprocessing::minmax,
     MultilabelMode::one_vs_rest},
    {Family::MultinomialNB, "multinomial_nb", "MultinomialNB",
     Preprocessing::minmax, MultilabelMode::one_vs_rest},
    {Family::DecisionTree, "decision_tree", "DecisionTree",
     Preprocessing::minmax, MultilabelMode::native},
    {Family::RandomForest, "random_forest", "RandomForest",
     Preprocessing::minmax, MultilabelMode::native},
    {Family::ExtraTrees, "extra_trees", "ExtraTrees", Preprocessing::minmax,
     MultilabelMode::native},
    {Family::AdaBoost, "adaboost", "AdaBoost", Preprocessing::minmax,
     MultilabelMode::one_vs_rest},
    {Family::GradientBoosting, "gradient_boosting", "GradientBoosting",
     Preprocessing::minmax, MultilabelMode::one_vs_rest},
    {Family::MLP, "mlp", "MLP", Preprocessing::standardize,
     MultilabelMode::native},
};

const FamilyInfo& info_for(Family f) {
  for (const FamilyInfo& fi : kFamilies) {
    if (fi.family == f) return fi;
  }
  throw parameter_error("unknown learner family");
}

const std::set<std::string>& allowed_keys(Family f) {
  static const std::map<Family, std::set<std::string>> table = {
      {Family::KNeighbors, {"knn.k"}},
      {Family::NearestCentroid, {}},
      {Family::LogisticRegression,
       {"lin.lr", "lin.l2", "lin.epochs", "lin.tol"}},
      {Family::SGD, {"lin.lr", "lin.l2", "lin.epochs", "lin.loss"}},
      {Family::PassiveAggressive, {"pa.C", "pa.epochs"}},
      {Family::GaussianNB, {"nb.var_floor"}},
      {Family::MultinomialNB, {"nb.alpha"}},
      {Family::DecisionTree, {"tree.max_depth", "tree.min_leaf"}},
      {Family::RandomForest,
       {"forest.trees", "forest.max_features", "tree.max_depth",
        "tree.min_leaf"}},
      {Family::ExtraTrees,
       {"forest.trees", "forest.max_features", "tree.max_depth",
        "tree.min_leaf"}},
      {Family::AdaBoost, {"ada.stages", "ada.depth"}},
      {Family::GradientBoosting, {"gb.stages", "gb.lr", "gb.depth"}},
      {Family::MLP,
       {"mlp.h1", "mlp.h2", "mlp.lr", "mlp.batch", "mlp.epochs", "mlp.layers",
        "mlp.decay"}},
  };
  return table.at(f);
}

}  // namespace

Family family_from_name(const std::string& name) {
  for (const FamilyInfo& fi : kFamilies) {
    if (name == fi.config_name) return fi.family;
  }
  throw parameter_error("unknown learner family '" + name + "'");
}

std::string family_config_name(Family f) { return info_for(f).config_name; }
std::string family_display_name(Family f) { return info_for(f).display_name; }

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const FamilyInfo& fi : kFamilies) out.push_back(fi.family);
  return out;
}

LearnerSpec LearnerSpec::make(Family f, uint64_t seed) {
  const FamilyInfo& fi = info_for(f);
  LearnerSpec spec;
  spec.family = f;
  spec.preprocessing = fi.preprocessing;
  spec.mode = fi.mode;
  spec.seed = seed;
  return spec;
}

void LearnerSpec::set(const std::string& key, const std::string& value) {
  hyperparams[key] = value;
}

double LearnerSpec::get_num(const std::string& key, double fallback) const {
  auto it = hyperparams.find(key);
  if (it == hyperparams.end()) return fallback;
  if (it->second == "inf") return std::numeric_limits<double>::infinity();
  try {
    size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw parameter_error("hyperparameter " + key + " has non-numeric value '" +
                          it->second + "'");
  }
}

int LearnerSpec::get_int(const std::string& key, int fallback) const {
  double v = get_num(key, fallback);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw parameter_error("hyperparameter " + key + " must be an integer");
  }
  return i;
}

std::string LearnerSpec::get_str(const std::string& key,
                                 const std::string& fallback) const {
  auto it = hyperparams.find(key);
  return it == hyperparams.end() ? fallback : it->second;
}

void LearnerSpec::validate() const {
  const auto& allowed = allowed_keys(family);
  for (const auto& [key, value] : hyperparams) {
    if (!allowed.contains(key)) {
      throw parameter_error("hyperparameter '" + key +
                            "' is not valid for family " +
                            family_config_name(family));
    }
  }
}

std::string LearnerSpec::params_string() const {
  std::string out;
  for (const auto& [key, value] : hyperparams) {
    if (!out.empty()) out += ' ';
    out += key + "=" + value;
  }
  return out;
}

std::vector<WordSet> threshold_scores(const Matrix& scores, ScoreKind kind) {
  const double cut = kind == ScoreKind::probability ? 0.5 : 0.0;
  std::vector<WordSet> out(scores.rows());
  for (size_t i = 0; i < scores.rows(); ++i) {
    for (size_t j = 0; j < scores.cols(); ++j) {
      if (scores(i, j) > cut) out[i].push_back(static_cast<uint32_t>(j));
    }
  }
  return out;
}

std::vector<WordSet> MultiLabelModel::predict_labels(const Matrix& X) const {
  return threshold_scores(predict_scores(X), score_kind());
}

std::unique_ptr<BinaryModel> BinaryTrainer::make_empty(size_t, uint64_t) const {
  throw parameter_error("trainer does not support incremental training");
}

namespace {

// One-vs-rest container. Column states: never predict (no positives seen
// at fit time), always predict (no negatives), or a live binary model.
class OvrModel : public MultiLabelModel {
public:
  enum class ColumnState : uint8_t { never, always, model };

  OvrModel(size_t n, size_t m, ScoreKind kind, bool updatable)
      : n_(n), m_(m), kind_(kind), updatable_(updatable) {
    states_.assign(m, ColumnState::never);
    models_.resize(m);
  }

  Matrix predict_scores(const Matrix& X) const override {
    if (X.cols() != n_) throw shape_error("ovr predict: dimension mismatch");
    const double lo = kind_ == ScoreKind::probability
                          ? 0.0
                          : -std::numeric_limits<double>::infinity();
    const double hi = kind_ == ScoreKind::probability
                          ? 1.0
                          : std::numeric_limits<double>::infinity();
    Matrix scores(X.rows(), m_);
    for (size_t j = 0; j < m_; ++j) {
      switch (states_[j]) {
        case ColumnState::never:
          for (size_t i = 0; i < X.rows(); ++i) scores(i, j) = lo;
          break;
        case ColumnState::always:
          for (size_t i = 0; i < X.rows(); ++i) scores(i, j) = hi;
          break;
        case ColumnState::model:
          for (size_t i = 0; i < X.rows(); ++i) {
            scores(i, j) = models_[j]->score(X.row(i));
          }
          break;
      }
    }
    return scores;
  }

  ScoreKind score_kind() const override { return kind_; }
  size_t label_count() const override { return m_; }
  size_t feature_count() const override { return n_; }

  bool supports_update() const override { return updatable_; }

  void update(const Matrix& X, const LabelMatrix& Y) override {
    if (!updatable_) MultiLabelModel::update(X, Y);
    if (X.rows() != Y.rows() || Y.label_count() != m_ || X.cols() != n_) {
      throw shape_error("ovr update: shape mismatch");
    }
    for (size_t i = 0; i < X.rows(); ++i) {
      for (size_t j = 0; j < m_; ++j) {
        models_[j]->update(X.row(i), Y.get(i, j));
      }
    }
  }

  void set_column(size_t j, ColumnState state,
                  std::unique_ptr<BinaryModel> model = nullptr) {
    states_[j] = state;
    models_[j] = std::move(model);
  }

private:
  size_t n_, m_;
  ScoreKind kind_;
  bool updatable_;
  std::vector<ColumnState> states_;
  std::vector<std::unique_ptr<BinaryModel>> models_;
};

}  // namespace

std::unique_ptr<MultiLabelModel> ovr_fit(const BinaryTrainer& trainer,
                                         const Matrix& X, const LabelMatrix& Y,
                                         uint64_t seed) {
  if (X.rows() == 0) throw parameter_error("ovr_fit: empty training set");
  if (X.rows() != Y.rows()) {
    throw shape_error("ovr_fit: " + std::to_string(X.rows()) +
                      " feature rows vs " + std::to_string(Y.rows()) +
                      " label rows");
  }
  const size_t m = Y.label_count();
  auto model =
      std::make_unique<OvrModel>(X.cols(), m, trainer.score_kind(), false);
  std::vector<uint8_t> column(X.rows());
  for (size_t j = 0; j < m; ++j) {
    size_t positives = 0;
    for (size_t i = 0; i < X.rows(); ++i) {
      column[i] = Y.get(i, j);
      positives += column[i];
    }
    if (positives == 0) {
      model->set_column(j, OvrModel::ColumnState::never);
    } else if (positives == X.rows()) {
      model->set_column(j, OvrModel::ColumnState::always);
    } else {
      try {
        model->set_column(j, OvrModel::ColumnState::model,
                          trainer.fit(X, column, derive_seed(seed, "ovr", j)));
      } catch (const std::exception& e) {
        throw parameter_error("ovr_fit: word " + std::to_string(j) + ": " +
                              e.what());
      }
    }
  }
  return model;
}

namespace {

std::unique_ptr<MultiLabelModel> ovr_make_incremental(
    const BinaryTrainer& trainer, size_t n, size_t m, uint64_t seed) {
  auto model = std::make_unique<OvrModel>(n, m, trainer.score_kind(), true);
  for (size_t j = 0; j < m; ++j) {
    model->set_column(j, OvrModel::ColumnState::model,
                      trainer.make_empty(n, derive_seed(seed, "ovr", j)));
  }
  return model;
}

struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> range;  // 0 for constant columns

  static MinMaxScaler fit(const Matrix& X) {
    MinMaxScaler s;
    s.min.assign(X.cols(), 0.0);
    s.range.assign(X.cols(), 0.0);
    for (size_t j = 0; j < X.cols(); ++j) {
      double lo = X(0, j), hi = X(0, j);
      for (size_t i = 1; i < X.rows(); ++i) {
        lo = std::min(lo, X(i, j));
        hi = std::max(hi, X(i, j));
      }
      s.min[j] = lo;
      s.range[j] = hi - lo;
    }
    return s;
  }

  // Clamped to [0,1] so count-based families keep nonnegative inputs on
  // unseen rows.
  Matrix transform(const Matrix& X) const {
    Matrix out(X.rows(), X.cols());
    for (size_t j = 0; j < X.cols(); ++j) {
      for (size_t i = 0; i < X.rows(); ++i) {
        out(i, j) = range[j] > 0.0
                        ? std::clamp((X(i, j) - min[j]) / range[j], 0.0, 1.0)
                        : 0.0;
      }
    }
    return out;
  }
};

class PreprocessedModel : public MultiLabelModel {
public:
  explicit PreprocessedModel(Preprocessing kind) : kind_(kind) {}
  PreprocessedModel(Preprocessing kind, std::unique_ptr<MultiLabelModel> inner)
      : kind_(kind), inner_(std::move(inner)) {}

  void set_inner(std::unique_ptr<MultiLabelModel> inner) {
    inner_ = std::move(inner);
  }

  void fit_stats(const Matrix& X) {
    if (kind_ == Preprocessing::minmax) {
      minmax_ = MinMaxScaler::fit(X);
    } else {
      standardize_ = fit_standardize(X);
    }
    fitted_ = true;
  }

  Matrix transform(const Matrix& X) const {
    return kind_ == Preprocessing::minmax ? minmax_.transform(X)
                                          : apply_standardize(X, standardize_);
  }

  Matrix predict_scores(const Matrix& X) const override {
    return inner_->predict_scores(transform(X));
  }
  ScoreKind score_kind() const override { return inner_->score_kind(); }
  size_t label_count() const override { return inner_->label_count(); }
  size_t feature_count() const override { return inner_->feature_count(); }

  bool supports_update() const override { return inner_->supports_update(); }

  // Online runs freeze the scaler on the first chunk.
  void update(const Matrix& X, const LabelMatrix& Y) override {
    if (!fitted_) fit_stats(X);
    inner_->update(transform(X), Y);
  }

  MultiLabelModel& inner() { return *inner_; }

private:
  Preprocessing kind_;
  std::unique_ptr<MultiLabelModel> inner_;
  MinMaxScaler minmax_;
  StandardizeStats standardize_;
  bool fitted_ = false;
};

TreeParams tree_params_from(const LearnerSpec& spec, uint32_t max_features,
                            ThresholdMode mode) {
  TreeParams params;
  // -1 (the default) leaves depth unlimited; 0 forces a root leaf.
  const int max_depth = spec.get_int("tree.max_depth", -1);
  params.max_depth =
      max_depth < 0 ? UINT32_MAX : static_cast<uint32_t>(max_depth);
  params.min_leaf = static_cast<uint32_t>(spec.get_int("tree.min_leaf", 1));
  params.max_features = max_features;
  params.mode = mode;
  return params;
}

MlpConfig mlp_config_from(const LearnerSpec& spec) {
  MlpConfig cfg;
  cfg.h1 = static_cast<uint32_t>(spec.get_int("mlp.h1", 128));
  cfg.h2 = static_cast<uint32_t>(spec.get_int("mlp.h2", 128));
  cfg.hidden_layers = static_cast<uint32_t>(spec.get_int("mlp.layers", 2));
  cfg.lr = spec.get_num("mlp.lr", 0.01);
  cfg.lr_decay = spec.get_num("mlp.decay", 0.001);
  cfg.batch = static_cast<uint32_t>(spec.get_int("mlp.batch", 32));
  cfg.epochs = static_cast<uint32_t>(spec.get_int("mlp.epochs", 200));
  cfg.seed = spec.seed;
  return cfg;
}

// Single-output net presented through the binary-trainer contract so the
// one-vs-rest mode is available for completeness. Costly: one net per word.
class MlpBinaryModel : public BinaryModel {
public:
  explicit MlpBinaryModel(std::unique_ptr<MlpModel> net) : net_(std::move(net)) {}
  double score(std::span<const double> x) const override {
    Matrix one(1, x.size());
    std::copy(x.begin(), x.end(), one.row(0).begin());
    return net_->predict_scores(one)(0, 0);
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  std::unique_ptr<MlpModel> net_;
};

class MlpBinaryTrainer : public BinaryTrainer {
public:
  explicit MlpBinaryTrainer(MlpConfig cfg) : cfg_(cfg) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override {
    LabelMatrix Y(X.rows(), 1);
    for (size_t i = 0; i < X.rows(); ++i) Y.set(i, 0, y[i]);
    MlpConfig cfg = cfg_;
    cfg.seed = seed;
    return std::make_unique<MlpBinaryModel>(mlp_fit(X, Y, cfg));
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  MlpConfig cfg_;
};

// Binary tree learner reusing the multi-label builder with one column.
class TreeBinaryModel : public BinaryModel {
public:
  explicit TreeBinaryModel(Tree tree) : tree_(std::move(tree)) {}
  double score(std::span<const double> x) const override {
    const TreeNode& leaf = tree_.leaf_for(x);
    return leaf.fractions.empty() ? 0.0 : leaf.fractions[0].second;
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  Tree tree_;
};

class TreeBinaryTrainer : public BinaryTrainer {
public:
  explicit TreeBinaryTrainer(TreeParams params) : params_(params) {}
  std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                   const std::vector<uint8_t>& y,
                                   uint64_t seed) const override {
    LabelMatrix Y(X.rows(), 1);
    for (size_t i = 0; i < X.rows(); ++i) Y.set(i, 0, y[i]);
    std::vector<uint32_t> rows(X.rows());
    for (size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<uint32_t>(i);
    Rng rng(seed);
    return std::make_unique<TreeBinaryModel>(
        fit_multilabel_tree(X, Y, rows, params_, rng));
  }
  ScoreKind score_kind() const override { return ScoreKind::probability; }

private:
  TreeParams params_;
};

std::unique_ptr<MultiLabelModel> dispatch_fit(const LearnerSpec& spec,
                                              const Matrix& X,
                                              const LabelMatrix& Y) {
  const bool native = spec.mode == MultilabelMode::native;
  const uint32_t n = static_cast<uint32_t>(X.cols());
  const uint32_t sqrt_features =
      static_cast<uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));

  switch (spec.family) {
    case Family::KNeighbors: {
      const uint32_t k = static_cast<uint32_t>(spec.get_int("knn.k", 5));
      if (native) return knn_fit(X, Y, k);
      return ovr_fit(KnnBinaryTrainer(k), X, Y, spec.seed);
    }
    case Family::NearestCentroid:
      // Both modes share the per-word centroid rule.
      return ovr_fit(CentroidBinaryTrainer(), X, Y, spec.seed);
    case Family::LogisticRegression:
      if (native) throw parameter_error("logistic_regression is OvR-only");
      return ovr_fit(
          LogRegTrainer(spec.get_num("lin.lr", 0.1),
                        spec.get_num("lin.l2", 1e-4),
                        static_cast<uint32_t>(spec.get_int("lin.epochs", 100)),
                        spec.get_num("lin.tol", 1e-6)),
          X, Y, spec.seed);
    case Family::SGD: {
      if (native) throw parameter_error("sgd is OvR-only");
      const LinearLoss loss = spec.get_str("lin.loss", "log") == "hinge"
                                  ? LinearLoss::hinge
                                  : LinearLoss::log;
      return ovr_fit(
          SgdTrainer(loss, spec.get_num("lin.lr", 0.1),
                     spec.get_num("lin.l2", 1e-4),
                     static_cast<uint32_t>(spec.get_int("lin.epochs", 20))),
          X, Y, spec.seed);
    }
    case Family::PassiveAggressive:
      if (native) throw parameter_error("passive_aggressive is OvR-only");
      return ovr_fit(
          PaTrainer(spec.get_num("pa.C", 1.0),
                    static_cast<uint32_t>(spec.get_int("pa.epochs", 5))),
          X, Y, spec.seed);
    case Family::GaussianNB:
      if (native) throw parameter_error("gaussian_nb is OvR-only");
      return ovr_fit(GaussianNbTrainer(spec.get_num("nb.var_floor", 1e-9)), X,
                     Y, spec.seed);
    case Family::MultinomialNB:
      if (native) throw parameter_error("multinomial_nb is OvR-only");
      return ovr_fit(MultinomialNbTrainer(spec.get_num("nb.alpha", 1.0)), X, Y,
                     spec.seed);
    case Family::DecisionTree: {
      TreeParams params = tree_params_from(spec, 0, ThresholdMode::best);
      if (native) return decision_tree_fit(X, Y, params, spec.seed);
      return ovr_fit(TreeBinaryTrainer(params), X, Y, spec.seed);
    }
    case Family::RandomForest:
    case Family::ExtraTrees: {
      const bool extra = spec.family == Family::ExtraTrees;
      uint32_t max_features = static_cast<uint32_t>(
          spec.get_int("forest.max_features", sqrt_features));
      TreeParams params = tree_params_from(
          spec, max_features,
          extra ? ThresholdMode::random : ThresholdMode::best);
      const uint32_t trees =
          static_cast<uint32_t>(spec.get_int("forest.trees", 100));
      if (native) return forest_fit(X, Y, trees, !extra, params, spec.seed);
      // OvR forest: one single-label forest per word.
      struct ForestBinaryTrainer : BinaryTrainer {
        uint32_t trees;
        bool bootstrap;
        TreeParams params;
        std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                         const std::vector<uint8_t>& y,
                                         uint64_t seed) const override {
          LabelMatrix Y1(X.rows(), 1);
          for (size_t i = 0; i < X.rows(); ++i) Y1.set(i, 0, y[i]);
          struct Wrap : BinaryModel {
            std::unique_ptr<MultiLabelModel> forest;
            double score(std::span<const double> x) const override {
              Matrix one(1, x.size());
              std::copy(x.begin(), x.end(), one.row(0).begin());
              return forest->predict_scores(one)(0, 0);
            }
            ScoreKind score_kind() const override {
              return ScoreKind::probability;
            }
          };
          auto wrap = std::make_unique<Wrap>();
          wrap->forest = forest_fit(X, Y1, trees, bootstrap, params, seed);
          return wrap;
        }
        ScoreKind score_kind() const override {
          return ScoreKind::probability;
        }
      } trainer;
      trainer.trees = trees;
      trainer.bootstrap = !extra;
      trainer.params = params;
      return ovr_fit(trainer, X, Y, spec.seed);
    }
    case Family::AdaBoost:
      if (native) throw parameter_error("adaboost is OvR-only");
      return ovr_fit(
          AdaBoostTrainer(static_cast<uint32_t>(spec.get_int("ada.stages", 100)),
                          static_cast<uint32_t>(spec.get_int("ada.depth", 1))),
          X, Y, spec.seed);
    case Family::GradientBoosting:
      if (native) throw parameter_error("gradient_boosting is OvR-only");
      return ovr_fit(
          GradBoostTrainer(static_cast<uint32_t>(spec.get_int("gb.stages", 100)),
                           spec.get_num("gb.lr", 0.1),
                           static_cast<uint32_t>(spec.get_int("gb.depth", 3))),
          X, Y, spec.seed);
    case Family::MLP: {
      MlpConfig cfg = mlp_config_from(spec);
      if (native) return mlp_fit(X, Y, cfg);
      return ovr_fit(MlpBinaryTrainer(cfg), X, Y, spec.seed);
    }
  }
  throw parameter_error("unknown learner family");
}

}  // namespace

std::unique_ptr<MultiLabelModel> fit_learner(const LearnerSpec& spec,
                                             const Matrix& X,
                                             const LabelMatrix& Y) {
  spec.validate();
  if (X.rows() == 0) throw parameter_error("fit_learner: empty training set");
  if (X.rows() != Y.rows()) {
    throw shape_error("fit_learner: feature/label row mismatch");
  }
  auto out = std::make_unique<PreprocessedModel>(spec.preprocessing);
  out->fit_stats(X);
  Matrix transformed = out->transform(X);
  out->set_inner(dispatch_fit(spec, transformed, Y));
  return out;
}

std::unique_ptr<MultiLabelModel> make_online_learner(const LearnerSpec& spec,
                                                     size_t n, size_t m) {
  spec.validate();
  std::unique_ptr<MultiLabelModel> inner;
  switch (spec.family) {
    case Family::SGD: {
      const LinearLoss loss = spec.get_str("lin.loss", "log") == "hinge"
                                  ? LinearLoss::hinge
                                  : LinearLoss::log;
      SgdTrainer trainer(loss, spec.get_num("lin.lr", 0.1),
                         spec.get_num("lin.l2", 1e-4),
                         static_cast<uint32_t>(spec.get_int("lin.epochs", 20)));
      inner = ovr_make_incremental(trainer, n, m, spec.seed);
      break;
    }
    case Family::PassiveAggressive: {
      PaTrainer trainer(spec.get_num("pa.C", 1.0),
                        static_cast<uint32_t>(spec.get_int("pa.epochs", 5)));
      inner = ovr_make_incremental(trainer, n, m, spec.seed);
      break;
    }
    default:
      throw parameter_error("family " + family_config_name(spec.family) +
                            " has no incremental mode");
  }
  return std::make_unique<PreprocessedModel>(spec.preprocessing,
                                             std::move(inner));
}

}  // namespace wordlab
