#include "wordlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wordlab/errors.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

ObjectMatrix gen_uniform(uint32_t rows, uint32_t n, uint64_t seed,
                         std::string source_tag) {
  if (rows < 1 || n < 1) {
    throw parameter_error("gen_uniform: rows and dims must be >= 1");
  }
  Rng rng(seed);
  ObjectMatrix out;
  out.values = Matrix(rows, n);
  out.source_tag = std::move(source_tag);
  double* p = out.values.data();
  for (size_t i = 0; i < static_cast<size_t>(rows) * n; ++i) {
    p[i] = rng.uniform01();
  }
  return out;
}

ClusteredData gen_clustered_detailed(uint32_t rows, uint32_t n,
                                     uint32_t cluster_count, double spread,
                                     uint64_t seed) {
  if (rows < 1 || n < 1) {
    throw parameter_error("gen_clustered: rows and dims must be >= 1");
  }
  if (cluster_count < 1) {
    throw parameter_error("gen_clustered: cluster_count must be >= 1");
  }
  if (!(spread > 0.0)) {
    throw parameter_error("gen_clustered: spread must be > 0");
  }
  Rng rng(seed);
  ClusteredData out;
  out.centers = Matrix(cluster_count, n);
  for (uint32_t c = 0; c < cluster_count; ++c) {
    for (uint32_t j = 0; j < n; ++j) out.centers(c, j) = rng.uniform01();
  }
  out.objects.values = Matrix(rows, n);
  out.objects.source_tag = "CLUSTERED";
  out.pre_clip = Matrix(rows, n);
  out.assignment.resize(rows);
  for (uint32_t i = 0; i < rows; ++i) {
    uint32_t c = static_cast<uint32_t>(rng.uniform_below(cluster_count));
    out.assignment[i] = c;
    for (uint32_t j = 0; j < n; ++j) {
      double v = out.centers(c, j) + spread * rng.gaussian();
      out.pre_clip(i, j) = v;
      out.objects.values(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

ObjectMatrix gen_clustered(uint32_t rows, uint32_t n, uint32_t cluster_count,
                           double spread, uint64_t seed) {
  return gen_clustered_detailed(rows, n, cluster_count, spread, seed).objects;
}

MinMaxStats rescale_unit_interval(Matrix& values) {
  MinMaxStats stats;
  const size_t rows = values.rows(), cols = values.cols();
  stats.min.assign(cols, 0.0);
  stats.max.assign(cols, 0.0);
  for (size_t j = 0; j < cols; ++j) {
    double lo = values(0, j), hi = values(0, j);
    for (size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, values(i, j));
      hi = std::max(hi, values(i, j));
    }
    stats.min[j] = lo;
    stats.max[j] = hi;
    const double range = hi - lo;
    for (size_t i = 0; i < rows; ++i) {
      values(i, j) = range > 0.0 ? (values(i, j) - lo) / range : 0.0;
    }
  }
  return stats;
}

Matrix load_features_csv_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty file: " + path);

  size_t cols = line.empty() ? 0 : 1 + std::count(line.begin(), line.end(), ',');
  if (cols == 0) throw parse_error("no columns in header of " + path);

  std::vector<double> cells;
  size_t rows = 0;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    size_t col = 0;
    while (std::getline(ls, cell, ',')) {
      if (col >= cols) {
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": too many columns");
      }
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        if (!std::isfinite(v)) throw std::invalid_argument(cell);
        cells.push_back(v);
      } catch (const std::exception&) {
        throw parse_error(path + ":" + std::to_string(lineno) + ": column " +
                          std::to_string(col) + ": non-numeric cell '" + cell +
                          "'");
      }
      ++col;
    }
    if (col != cols) {
      throw parse_error(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(cols) + " columns, got " +
                        std::to_string(col));
    }
    ++rows;
  }
  if (rows == 0) throw parse_error("no data rows in " + path);

  Matrix out(rows, cols);
  std::copy(cells.begin(), cells.end(), out.data());
  return out;
}

ObjectMatrix load_grounded(const std::string& features_path,
                           std::string source_tag) {
  ObjectMatrix out;
  out.values = load_features_csv_raw(features_path);
  out.source_tag = std::move(source_tag);
  rescale_unit_interval(out.values);
  return out;
}

std::pair<ObjectMatrix, ObjectMatrix> load_grounded_pair(
    const std::string& tutor_path, const std::string& learner_path) {
  ObjectMatrix tutor = load_grounded(tutor_path, "GRO2-tutor");
  ObjectMatrix learner = load_grounded(learner_path, "GRO2-learner");
  if (tutor.rows() != learner.rows() || tutor.dims() != learner.dims()) {
    throw shape_error("paired load: " + std::to_string(tutor.rows()) + "x" +
                      std::to_string(tutor.dims()) + " vs " +
                      std::to_string(learner.rows()) + "x" +
                      std::to_string(learner.dims()));
  }
  return {std::move(tutor), std::move(learner)};
}

LabeledDataset label_with_tutor(const ObjectMatrix& objects,
                                const Lexicon& lexicon, uint32_t k) {
  if (objects.dims() != lexicon.n) {
    throw shape_error("label_with_tutor: objects have " +
                      std::to_string(objects.dims()) + " dims, lexicon has " +
                      std::to_string(lexicon.n));
  }
  LabeledDataset out;
  out.objects = objects;
  out.k = k;
  out.lexicon_seed = lexicon.rng_seed;
  out.labels = LabelMatrix(objects.rows(), lexicon.word_count());
  for (size_t i = 0; i < objects.rows(); ++i) {
    for (uint32_t id : describe(lexicon, objects.values.row(i), k)) {
      out.labels.set(i, id, true);
    }
  }
  return out;
}

PairedDataset label_paired(const ObjectMatrix& tutor_view,
                           const ObjectMatrix& learner_view,
                           const Lexicon& lexicon, uint32_t k) {
  if (tutor_view.rows() != learner_view.rows() ||
      tutor_view.dims() != learner_view.dims()) {
    throw shape_error("label_paired: view shapes differ");
  }
  LabeledDataset labeled = label_with_tutor(tutor_view, lexicon, k);
  PairedDataset out;
  out.tutor_view = tutor_view;
  out.learner_view = learner_view;
  out.labels = std::move(labeled.labels);
  out.k = k;
  return out;
}

StandardizeStats fit_standardize(const Matrix& values) {
  const size_t rows = values.rows(), cols = values.cols();
  if (rows == 0) throw parameter_error("fit_standardize: empty matrix");
  StandardizeStats stats;
  stats.mean.assign(cols, 0.0);
  stats.stddev.assign(cols, 0.0);
  for (size_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (size_t i = 0; i < rows; ++i) sum += values(i, j);
    const double mean = sum / rows;
    double ss = 0.0;
    for (size_t i = 0; i < rows; ++i) {
      const double d = values(i, j) - mean;
      ss += d * d;
    }
    stats.mean[j] = mean;
    stats.stddev[j] = std::sqrt(ss / rows);  // population std
  }
  return stats;
}

Matrix apply_standardize(const Matrix& values, const StandardizeStats& stats) {
  if (values.cols() != stats.mean.size()) {
    throw shape_error("apply_standardize: column count mismatch");
  }
  Matrix out(values.rows(), values.cols());
  for (size_t j = 0; j < values.cols(); ++j) {
    const double mean = stats.mean[j];
    const double sd = stats.stddev[j];
    for (size_t i = 0; i < values.rows(); ++i) {
      out(i, j) = sd > 0.0 ? (values(i, j) - mean) / sd : 0.0;
    }
  }
  return out;
}

FoldSplit kfold_split(uint32_t rows, uint32_t folds, uint64_t seed) {
  if (folds < 2) throw parameter_error("kfold_split: folds must be >= 2");
  if (rows < folds) throw parameter_error("kfold_split: rows must be >= folds");

  std::vector<uint32_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  FoldSplit split;
  split.fold_count = folds;
  split.seed = seed;
  split.train.resize(folds);
  split.test.resize(folds);

  // First (rows % folds) test folds take the extra row.
  size_t start = 0;
  for (uint32_t f = 0; f < folds; ++f) {
    size_t size = rows / folds + (f < rows % folds ? 1 : 0);
    split.test[f].assign(order.begin() + start, order.begin() + start + size);
    split.train[f].reserve(rows - size);
    split.train[f].insert(split.train[f].end(), order.begin(),
                          order.begin() + start);
    split.train[f].insert(split.train[f].end(), order.begin() + start + size,
                          order.end());
    start += size;
  }
  return split;
}

void save_features_csv(const Matrix& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  for (size_t j = 0; j < values.cols(); ++j) {
    out << (j ? ",f" : "f") << j;
  }
  out << '\n';
  char buf[64];
  for (size_t i = 0; i < values.rows(); ++i) {
    for (size_t j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw parse_error("write failed for " + path);
}

void save_labels_csv(const std::vector<WordSet>& labels,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  out << "words\n";
  for (const WordSet& row : labels) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw parse_error("write failed for " + path);
}

std::vector<WordSet> load_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "words") {
    throw parse_error(path + ": expected 'words' header");
  }
  std::vector<WordSet> out;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    WordSet row;
    std::istringstream ls(line);
    uint32_t id;
    while (ls >> id) row.push_back(id);
    if (!ls.eof()) {
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": malformed id list");
    }
    if (!std::is_sorted(row.begin(), row.end()) ||
        std::adjacent_find(row.begin(), row.end()) != row.end()) {
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": ids must be sorted and unique");
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<WordSet> labels_to_wordsets(const LabelMatrix& labels) {
  std::vector<WordSet> out(labels.rows());
  for (size_t i = 0; i < labels.rows(); ++i) out[i] = labels.row_ids(i);
  return out;
}

LabelMatrix wordsets_to_labels(const std::vector<WordSet>& sets, uint32_t m) {
  LabelMatrix out(sets.size(), m);
  for (size_t i = 0; i < sets.size(); ++i) {
    for (uint32_t id : sets[i]) {
      if (id >= m) throw parameter_error("label id out of range");
      out.set(i, id, true);
    }
  }
  return out;
}

}  // namespace wordlab
