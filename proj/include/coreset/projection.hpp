// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "coreset/dataset.hpp"
#include "coreset/feature_matrix.hpp"
#include "coreset/models.hpp"
#include "coreset/rng.hpp"

namespace coreset {

// Gaussian weighting distribution from which projection sample points are
// drawn; a cheap stand-in for the posterior.
class GaussianWeighting {
 public:
  // Validates symmetry (1e-9 componentwise) and positive definiteness.
  GaussianWeighting(std::vector<double> mean, std::vector<double> covariance);

  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& covariance() const { return covariance_; }

  void sample(Rng& rng, std::span<double> out) const;

 private:
  std::vector<double> mean_;
  std::vector<double> covariance_;
  std::vector<double> chol_;  // cached lower factor
};

enum class NormKind { fisher, l2 };

struct ProjectionConfig {
  std::size_t feature_count = 500;  // J
  NormKind norm = NormKind::fisher;
};

// The shared randomness of one projection: J sample points (and, for the
// gradient norm, J coordinate picks). Kept explicit so a projection can be
// recorded and replayed.
struct ProjectionDraw {
  NormKind norm = NormKind::fisher;
  std::size_t feature_count = 0;  // J
  std::size_t param_dim = 0;      // D
  std::vector<double> points;     // J x D, row-major
  std::vector<std::size_t> coords;  // J entries, fisher only
};

ProjectionDraw draw_projection(const GaussianWeighting& weighting,
                               const ProjectionConfig& cfg,
                               std::size_t param_dim, Rng& rng);

// Row n of the result:
//   fisher: sqrt(D/J) * [ grad L_n(mu_j)[d_j] ]_j
//   l2:     sqrt(1/J) * [ L_n(mu_j) ]_j
// Row dot products are unbiased estimates of the corresponding Hilbert
// inner products. Throws numeric_error naming the datapoint and sample on
// any non-finite evaluation.
FeatureMatrix apply_projection(const ModelAdapter& model,
                               const ProjectionDraw& draw);

FeatureMatrix project(const ModelAdapter& model,
                      const GaussianWeighting& weighting,
                      const ProjectionConfig& cfg, Rng& rng);

struct NewtonOptions {
  std::size_t max_iterations = 100;
  double gradient_tolerance = 1e-8;
};

// Gaussian surrogate at the mode of the log joint: mean from a damped
// Newton solve started at zero, covariance from the inverse negative
// Hessian at the mode (symmetrized). Uses the adapter's analytic Hessian
// when available, otherwise central finite differences of the gradient
// with step 1e-5 * (1 + |theta_i|).
GaussianWeighting laplace_weighting(const ModelAdapter& model,
                                    const NewtonOptions& opts = {});

// N x (D+1) embedding for the Gaussian mean model whose row dot products
// equal tr(cov) + (mean - y_n)'(mean - y_m) exactly:
//   row n = [ sqrt(tr(cov)), (mean - y_n)' ].
FeatureMatrix exact_gaussian_embedding(const Dataset& data,
                                       const GaussianPosterior& posterior);

}  // namespace coreset
