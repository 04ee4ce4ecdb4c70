// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coreset {

// Row-major N x J matrix whose rows are the finite-dimensional stand-ins
// for the per-datapoint log-likelihood vectors. Row inner products realize
// the Hilbert inner product (exactly for closed-form embeddings, in
// expectation for random projections).
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t rows, std::size_t cols);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t n) {
    return {data_.data() + n * cols_, cols_};
  }
  std::span<const double> row(std::size_t n) const {
    return {data_.data() + n * cols_, cols_};
  }

  double& at(std::size_t n, std::size_t j) { return data_[n * cols_ + j]; }
  double at(std::size_t n, std::size_t j) const { return data_[n * cols_ + j]; }

  std::span<const double> data() const { return data_; }

  // Sum of all rows, accumulated in row order.
  std::vector<double> row_sum() const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// Nonnegative per-datapoint weights; most entries are zero for coreset
// outputs. Stored densely, support recovered by scanning.
class WeightVector {
 public:
  explicit WeightVector(std::size_t n) : w_(n, 0.0) {}
  explicit WeightVector(std::vector<double> w);

  static WeightVector ones(std::size_t n);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t n) const { return w_[n]; }
  double& operator[](std::size_t n) { return w_[n]; }
  std::span<const double> values() const { return w_; }

  std::vector<std::size_t> support() const;
  std::size_t support_size() const;

 private:
  std::vector<double> w_;
};

}  // namespace coreset
