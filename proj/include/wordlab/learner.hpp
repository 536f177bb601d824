#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordlab/dataset.hpp"
#include "wordlab/matrix.hpp"

namespace wordlab {

enum class Family {
  KNeighbors,
  NearestCentroid,
  LogisticRegression,
  SGD,
  PassiveAggressive,
  GaussianNB,
  MultinomialNB,
  DecisionTree,
  RandomForest,
  ExtraTrees,
  AdaBoost,
  GradientBoosting,
  MLP,
};

enum class Preprocessing { minmax, standardize };
enum class MultilabelMode { native, one_vs_rest };

// How predict_scores output is read: probabilities threshold at > 0.5,
// margins at > 0. Both thresholds are strict; boundary values predict
// negative.
enum class ScoreKind { probability, margin };

Family family_from_name(const std::string& name);
// Lowercase config name, e.g. "random_forest".
std::string family_config_name(Family f);
// Reporting name, e.g. "RandomForest" or "NearestCentroidOvR".
std::string family_display_name(Family f);
std::vector<Family> all_families();

struct LearnerSpec {
  Family family = Family::KNeighbors;
  std::map<std::string, std::string> hyperparams;
  Preprocessing preprocessing = Preprocessing::minmax;
  MultilabelMode mode = MultilabelMode::one_vs_rest;
  uint64_t seed = 0;

  // Family defaults for preprocessing and multilabel mode.
  static LearnerSpec make(Family f, uint64_t seed = 0);

  void set(const std::string& key, const std::string& value);
  double get_num(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_str(const std::string& key,
                      const std::string& fallback) const;

  // Throws parameter_error on keys outside the family's documented set.
  void validate() const;

  // Stable "k=v k=v" rendering of the hyperparams for result records.
  std::string params_string() const;
};

// A fitted multi-label model. Immutable after fit; predict is safe to call
// concurrently.
class MultiLabelModel {
public:
  virtual ~MultiLabelModel() = default;

  virtual Matrix predict_scores(const Matrix& X) const = 0;
  virtual ScoreKind score_kind() const = 0;
  virtual size_t label_count() const = 0;
  virtual size_t feature_count() const = 0;

  // Incremental update with additional samples; only online families
  // support it.
  virtual bool supports_update() const { return false; }
  virtual void update(const Matrix&, const LabelMatrix&) {
    throw parameter_error("this learner does not support incremental updates");
  }

  std::vector<WordSet> predict_labels(const Matrix& X) const;
};

std::vector<WordSet> threshold_scores(const Matrix& scores, ScoreKind kind);

// Binary learner contract consumed by the one-vs-rest wrapper.
class BinaryModel {
public:
  virtual ~BinaryModel() = default;
  virtual double score(std::span<const double> x) const = 0;
  virtual ScoreKind score_kind() const = 0;
  virtual bool supports_update() const { return false; }
  virtual void update(std::span<const double>, uint8_t) {
    throw parameter_error("binary model does not support updates");
  }
};

class BinaryTrainer {
public:
  virtual ~BinaryTrainer() = default;
  virtual std::unique_ptr<BinaryModel> fit(const Matrix& X,
                                           const std::vector<uint8_t>& y,
                                           uint64_t seed) const = 0;
  virtual ScoreKind score_kind() const = 0;
  // Online trainers build an empty model and feed samples through update().
  virtual bool incremental() const { return false; }
  virtual std::unique_ptr<BinaryModel> make_empty(size_t n,
                                                  uint64_t seed) const;
};

// One independent binary model per word column. Columns with no positive
// training example are hard-coded to never predict; columns with no
// negative example always predict. Per-column RNG substreams are
// derive_seed(seed, "ovr", word_id). Incremental trainers instantiate a
// live model for every column instead, since class balance may change as
// samples arrive.
std::unique_ptr<MultiLabelModel> ovr_fit(const BinaryTrainer& trainer,
                                         const Matrix& X,
                                         const LabelMatrix& Y, uint64_t seed);

// Fits the requested family including its preprocessing stage. Statistics
// for the preprocessing are computed from X only (the training fold).
std::unique_ptr<MultiLabelModel> fit_learner(const LearnerSpec& spec,
                                             const Matrix& X,
                                             const LabelMatrix& Y);

// Empty incremental model (SGD and PassiveAggressive) ready to consume
// samples through update(). Every word column gets a live model; the
// preprocessing statistics freeze on the first chunk.
std::unique_ptr<MultiLabelModel> make_online_learner(const LearnerSpec& spec,
                                                     size_t n, size_t m);

}  // namespace wordlab
