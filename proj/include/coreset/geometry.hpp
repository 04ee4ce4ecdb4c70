// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coreset/feature_matrix.hpp"

namespace coreset {

// Geometry constants of a set of feature rows:
//   sigma_n  - per-row Euclidean norm,
//   sigma    - sum of the norms (problem scale),
//   eta      - in [0,1]; eta^2 = 1 - ||sum of rows||^2 / sigma^2,
//   eta_bar  - in [0,2]; max over row pairs of ||r_n/s_n - r_m/s_m||.
// eta and eta_bar both measure how well-aligned the rows are; zero means a
// single scaled row reproduces the sum exactly.
struct AlignmentDiagnostics {
  std::vector<double> sigma_n;
  double sigma = 0.0;
  double eta = 0.0;
  double eta_bar = 0.0;
  // eta_bar is exact when all pairs were scanned; for large N a seeded
  // random subset of pairs is used instead and this flag is cleared.
  bool eta_bar_exact = true;
  // Hull-width constant in [0,1); never computed here, only carried when
  // supplied externally.
  std::optional<double> nu;
};

struct DiagnosticsOptions {
  // Scan all pairs for eta_bar when N <= exact_pair_limit.
  std::size_t exact_pair_limit = 2000;
  std::size_t sampled_pairs = 100000;
  std::uint64_t pair_seed = 0;
};

// Throws numeric_error("degenerate problem ...") when every row is zero.
// Zero-norm rows are excluded from the eta_bar pair scan.
AlignmentDiagnostics compute_diagnostics(const FeatureMatrix& f,
                                         const DiagnosticsOptions& opts = {});

// sum_n w_n * row_n; iterates over the support of w only.
std::vector<double> weighted_sum(const FeatureMatrix& f,
                                 const WeightVector& w);

// || sum_n w_n row_n - sum_n row_n ||_2
double approximation_error(const FeatureMatrix& f, const WeightVector& w);

// Dense N x N Gram matrix of row inner products. Refuses to materialize
// more than max_rows^2 entries; the iterative constructions never need it.
std::vector<double> kernel_matrix(const FeatureMatrix& f,
                                  std::size_t max_rows = 10000);

}  // namespace coreset
