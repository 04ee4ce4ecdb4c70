// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "coreset/feature_matrix.hpp"
#include "coreset/rng.hpp"

namespace coreset {

// Importance sampling: M multinomial draws with probabilities proportional
// to the row norms, reweighted so that E[W_n] = 1 for every n. Support size
// is at most M. Throws on an all-zero matrix.
WeightVector importance_sampling(const FeatureMatrix& f, std::size_t budget,
                                 Rng& rng);

// Same sampler driven by externally supplied nonnegative sensitivities.
WeightVector uniform_coreset(const std::vector<double>& sensitivities,
                             std::size_t budget, Rng& rng);

// Uniform subsampling baseline: probabilities 1/N, weights N * M_n / M.
WeightVector uniform_random(std::size_t n, std::size_t budget, Rng& rng);

enum class StepRule {
  exact_line_search,  // closed-form quadratic line search
  fixed               // gamma_t = 2 / (3t + 4)
};

struct FWStep {
  std::size_t iteration;   // 1-based
  std::size_t vertex;      // chosen row index
  double gamma;            // step actually applied (clamped to [0,1])
  double gamma_raw;        // line-search value before clamping
  double objective;        // squared residual norm after the step
};

struct FWTrace {
  std::size_t init_vertex = 0;
  double initial_objective = 0.0;
  std::vector<FWStep> steps;
  bool converged = false;  // residual vanished or vertex == iterate
  double sigma = 0.0;
};

struct FWResult {
  WeightVector weights;
  FWTrace trace;
};

// Greedy sparse approximation of the row sum over the polytope
// { w >= 0, sum_n sigma_n w_n = sigma } whose vertices put all weight on a
// single row. Initializes at the vertex most aligned with the row sum, then
// runs budget-1 iterations, each adding at most one row to the support.
// Ties in the vertex search break toward the lowest index. The per-iteration
// cost is O(N J): the scan uses the precomputed row sum and per-row dot
// products, never the N x N Gram matrix.
FWResult frank_wolfe(const FeatureMatrix& f, std::size_t budget,
                     StepRule rule = StepRule::exact_line_search);

// One node's output in a distributed run: the global row indices the node
// owned and the weights it assigned to them.
struct CoresetPart {
  std::vector<std::size_t> indices;
  WeightVector weights;
};

// Concatenates per-node weights into a full-length vector without any
// rescaling. The index sets must partition {0, ..., N-1}.
WeightVector merge_distributed(const std::vector<CoresetPart>& parts);

}  // namespace coreset
