// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/linalg.hpp"

#include <cassert>
#include <cmath>

namespace coreset::linalg {

bool cholesky(std::span<const double> a, std::size_t d,
              std::span<double> lower) {
  assert(a.size() == d * d && lower.size() == d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= lower[i * d + k] * lower[j * d + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        lower[i * d + i] = std::sqrt(s);
      } else {
        lower[i * d + j] = s / lower[j * d + j];
      }
    }
    for (std::size_t j = i + 1; j < d; ++j) lower[i * d + j] = 0.0;
  }
  return true;
}

void cholesky_solve(std::span<const double> lower, std::size_t d,
                    std::span<double> b) {
  assert(lower.size() == d * d && b.size() == d);
  // forward: L z = b
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower[i * d + k] * b[k];
    b[i] = s / lower[i * d + i];
  }
  // backward: L^T x = z
  for (std::size_t i = d; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < d; ++k) s -= lower[k * d + i] * b[k];
    b[i] = s / lower[i * d + i];
  }
}

std::vector<double> cholesky_inverse(std::span<const double> lower,
                                     std::size_t d) {
  std::vector<double> inv(d * d, 0.0);
  std::vector<double> col(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    cholesky_solve(lower, d, col);
    for (std::size_t i = 0; i < d; ++i) inv[i * d + j] = col[i];
  }
  // Enforce exact symmetry against round-off.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double v = 0.5 * (inv[i * d + j] + inv[j * d + i]);
      inv[i * d + j] = v;
      inv[j * d + i] = v;
    }
  return inv;
}

double cholesky_log_det(std::span<const double> lower, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::log(lower[i * d + i]);
  return 2.0 * s;
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  assert(a.size() == rows * cols && x.size() == cols && y.size() == rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
    y[i] = s;
  }
}

std::vector<double> identity(std::size_t d) {
  std::vector<double> a(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) a[i * d + i] = 1.0;
  return a;
}

}  // namespace coreset::linalg
