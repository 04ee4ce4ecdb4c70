// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/feature_matrix.hpp"

#include <stdexcept>

#include "coreset/kernels.hpp"

namespace coreset {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("FeatureMatrix: dimensions must be positive");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("FeatureMatrix: dimensions must be positive");
  if (data_.size() != rows * cols)
    throw std::invalid_argument("FeatureMatrix: data size mismatch");
}

std::vector<double> FeatureMatrix::row_sum() const {
  std::vector<double> s(cols_, 0.0);
  for (std::size_t n = 0; n < rows_; ++n) kernels::axpy(1.0, row(n), s);
  return s;
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  for (double v : w_) {
    if (!(v >= 0.0))
      throw std::invalid_argument("WeightVector: weights must be nonnegative");
  }
}

WeightVector WeightVector::ones(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0));
}

std::vector<std::size_t> WeightVector::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t n = 0; n < w_.size(); ++n)
    if (w_[n] > 0.0) idx.push_back(n);
  return idx;
}

std::size_t WeightVector::support_size() const {
  std::size_t c = 0;
  for (double v : w_)
    if (v > 0.0) ++c;
  return c;
}

}  // namespace coreset
