#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wordlab/errors.hpp"

namespace wordlab {

// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double& operator()(size_t i, size_t j) { return values_[i * cols_ + j]; }
  double operator()(size_t i, size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> row(size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  // New matrix holding the given rows, in order.
  Matrix gather(std::span<const uint32_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (size_t i = 0; i < indices.size(); ++i) {
      auto src = row(indices[i]);
      std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

// Binary rows-by-labels matrix. Values are 0/1.
class LabelMatrix {
public:
  LabelMatrix() = default;
  LabelMatrix(size_t rows, size_t labels)
      : rows_(rows), labels_(labels), bits_(rows * labels, 0) {}

  size_t rows() const { return rows_; }
  size_t label_count() const { return labels_; }

  uint8_t get(size_t i, size_t j) const { return bits_[i * labels_ + j]; }
  void set(size_t i, size_t j, bool v) { bits_[i * labels_ + j] = v ? 1 : 0; }

  // Sorted ids of the positive labels in row i.
  std::vector<uint32_t> row_ids(size_t i) const {
    std::vector<uint32_t> ids;
    for (size_t j = 0; j < labels_; ++j) {
      if (bits_[i * labels_ + j]) ids.push_back(static_cast<uint32_t>(j));
    }
    return ids;
  }

  // Per-label positive counts over all rows.
  std::vector<uint32_t> column_counts() const {
    std::vector<uint32_t> counts(labels_, 0);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < labels_; ++j) counts[j] += bits_[i * labels_ + j];
    }
    return counts;
  }

  LabelMatrix gather(std::span<const uint32_t> indices) const {
    LabelMatrix out(indices.size(), labels_);
    for (size_t i = 0; i < indices.size(); ++i) {
      const uint8_t* src = bits_.data() + indices[i] * labels_;
      std::copy(src, src + labels_, out.bits_.data() + i * labels_);
    }
    return out;
  }

  bool operator==(const LabelMatrix&) const = default;

private:
  size_t rows_ = 0;
  size_t labels_ = 0;
  std::vector<uint8_t> bits_;
};

}  // namespace wordlab
