#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordlab/matrix.hpp"
#include "wordlab/tutor.hpp"

namespace wordlab {

// Feature matrix with rows in [0,1]^n after scaling.
struct ObjectMatrix {
  Matrix values;
  std::string source_tag;  // SIM, SIM-DEVELOP, GRO1, GRO2-tutor,
                           // GRO2-learner, CLUSTERED

  size_t rows() const { return values.rows(); }
  size_t dims() const { return values.cols(); }
};

struct LabeledDataset {
  ObjectMatrix objects;
  LabelMatrix labels;  // rows x m, exactly k ones per row when tutor-labeled
  uint32_t k = 0;
  std::optional<uint64_t> lexicon_seed;  // absent for externally labeled data
};

// Two perceptions of the same physical objects, row-aligned. Labels are
// produced from the tutor view; training consumes the learner view.
struct PairedDataset {
  ObjectMatrix tutor_view;
  ObjectMatrix learner_view;
  LabelMatrix labels;
  uint32_t k = 0;
};

struct FoldSplit {
  uint32_t fold_count = 0;
  uint64_t seed = 0;
  std::vector<std::vector<uint32_t>> train;  // per fold, shuffled order
  std::vector<std::vector<uint32_t>> test;   // per fold; folds partition rows
};

ObjectMatrix gen_uniform(uint32_t rows, uint32_t n, uint64_t seed,
                         std::string source_tag = "SIM");

// Gaussian blobs around uniform-random centers, clipped to [0,1].
// The detailed form records generation bookkeeping for verification.
struct ClusteredData {
  ObjectMatrix objects;
  Matrix centers;                    // cluster_count x n
  std::vector<uint32_t> assignment;  // generating cluster per row
  Matrix pre_clip;                   // values before clipping
};

ClusteredData gen_clustered_detailed(uint32_t rows, uint32_t n,
                                     uint32_t cluster_count, double spread,
                                     uint64_t seed);
ObjectMatrix gen_clustered(uint32_t rows, uint32_t n, uint32_t cluster_count,
                           double spread, uint64_t seed);

// Per-column linear scaler fitted on the full matrix: x -> (x-min)/(max-min),
// constant columns map to 0. Returns the fitted (min, max) pairs.
struct MinMaxStats {
  std::vector<double> min;
  std::vector<double> max;
};
MinMaxStats rescale_unit_interval(Matrix& values);

// CSV loader for grounded feature matrices (header f0..f{n-1}); values are
// rescaled to [0,1] per column on load.
ObjectMatrix load_grounded(const std::string& features_path,
                           std::string source_tag = "GRO1");
std::pair<ObjectMatrix, ObjectMatrix> load_grounded_pair(
    const std::string& tutor_path, const std::string& learner_path);

LabeledDataset label_with_tutor(const ObjectMatrix& objects,
                                const Lexicon& lexicon, uint32_t k);
PairedDataset label_paired(const ObjectMatrix& tutor_view,
                           const ObjectMatrix& learner_view,
                           const Lexicon& lexicon, uint32_t k);

// Per-column (x - mean) / std with population std; zero-variance columns
// pass through as zeros. Statistics come from the fitted matrix only.
struct StandardizeStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};
StandardizeStats fit_standardize(const Matrix& values);
Matrix apply_standardize(const Matrix& values, const StandardizeStats& stats);

FoldSplit kfold_split(uint32_t rows, uint32_t folds, uint64_t seed);

// CSV round-trip for features and label lists (see README for the schema).
void save_features_csv(const Matrix& values, const std::string& path);
Matrix load_features_csv_raw(const std::string& path);
void save_labels_csv(const std::vector<WordSet>& labels,
                     const std::string& path);
std::vector<WordSet> load_labels_csv(const std::string& path);

std::vector<WordSet> labels_to_wordsets(const LabelMatrix& labels);
LabelMatrix wordsets_to_labels(const std::vector<WordSet>& sets, uint32_t m);

}  // namespace wordlab
