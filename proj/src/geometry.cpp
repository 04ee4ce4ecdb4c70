// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coreset/errors.hpp"
#include "coreset/kernels.hpp"
#include "coreset/rng.hpp"

namespace coreset {

AlignmentDiagnostics compute_diagnostics(const FeatureMatrix& f,
                                         const DiagnosticsOptions& opts) {
  const std::size_t n = f.rows();
  AlignmentDiagnostics d;
  d.sigma_n.resize(n);

  std::vector<std::size_t> nonzero;
  nonzero.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s2 = kernels::squared_norm(f.row(i));
    if (!std::isfinite(s2))
      throw numeric_error("compute_diagnostics: row " + std::to_string(i) +
                          " has non-finite norm");
    d.sigma_n[i] = std::sqrt(s2);
    d.sigma += d.sigma_n[i];
    if (d.sigma_n[i] > 0.0) nonzero.push_back(i);
  }
  if (d.sigma <= 0.0)
    throw numeric_error("degenerate problem: all feature rows are zero");

  const std::vector<double> total = f.row_sum();
  const double eta2 =
      std::max(0.0, 1.0 - kernels::squared_norm(total) / (d.sigma * d.sigma));
  d.eta = std::sqrt(eta2);

  // eta_bar^2 = max over pairs of 2 - 2 <r_n, r_m> / (s_n s_m); maximizing
  // means minimizing the normalized pair inner product.
  double min_align = 1.0;
  if (nonzero.size() >= 2) {
    if (n <= opts.exact_pair_limit) {
      for (std::size_t a = 0; a + 1 < nonzero.size(); ++a) {
        for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
          const std::size_t i = nonzero[a], j = nonzero[b];
          const double align = kernels::dot(f.row(i), f.row(j)) /
                               (d.sigma_n[i] * d.sigma_n[j]);
          min_align = std::min(min_align, align);
        }
      }
    } else {
      d.eta_bar_exact = false;
      Rng rng(opts.pair_seed);
      for (std::size_t s = 0; s < opts.sampled_pairs; ++s) {
        const std::size_t i = nonzero[rng.uniform_index(nonzero.size())];
        const std::size_t j = nonzero[rng.uniform_index(nonzero.size())];
        if (i == j) continue;
        const double align =
            kernels::dot(f.row(i), f.row(j)) / (d.sigma_n[i] * d.sigma_n[j]);
        min_align = std::min(min_align, align);
      }
    }
  }
  d.eta_bar = std::sqrt(std::max(0.0, 2.0 - 2.0 * min_align));
  return d;
}

std::vector<double> weighted_sum(const FeatureMatrix& f,
                                 const WeightVector& w) {
  if (w.size() != f.rows())
    throw std::invalid_argument("weighted_sum: weight length " +
                                std::to_string(w.size()) +
                                " does not match row count " +
                                std::to_string(f.rows()));
  std::vector<double> acc(f.cols(), 0.0);
  for (std::size_t n = 0; n < f.rows(); ++n) {
    if (w[n] != 0.0) kernels::axpy(w[n], f.row(n), acc);
  }
  return acc;
}

double approximation_error(const FeatureMatrix& f, const WeightVector& w) {
  const std::vector<double> lw = weighted_sum(f, w);
  const std::vector<double> l = weighted_sum(f, WeightVector::ones(f.rows()));
  double err2 = 0.0;
  for (std::size_t j = 0; j < lw.size(); ++j) {
    const double diff = lw[j] - l[j];
    err2 += diff * diff;
  }
  return std::sqrt(err2);
}

std::vector<double> kernel_matrix(const FeatureMatrix& f,
                                  std::size_t max_rows) {
  const std::size_t n = f.rows();
  if (n > max_rows)
    throw std::invalid_argument(
        "kernel_matrix: " + std::to_string(n) +
        " rows exceed the materialization limit; use the streaming "
        "row-sum operations instead");
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = kernels::dot(f.row(i), f.row(j));
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  return k;
}

}  // namespace coreset
