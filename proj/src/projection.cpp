// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "coreset/errors.hpp"
#include "coreset/kernels.hpp"
#include "coreset/linalg.hpp"

namespace coreset {

GaussianWeighting::GaussianWeighting(std::vector<double> mean,
                                     std::vector<double> covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const std::size_t d = mean_.size();
  if (d == 0) throw std::invalid_argument("GaussianWeighting: empty mean");
  if (covariance_.size() != d * d)
    throw std::invalid_argument("GaussianWeighting: covariance shape mismatch");
  double max_abs = 0.0;
  for (double v : covariance_) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(covariance_[i * d + j] - covariance_[j * d + i]) >
          1e-9 * (1.0 + max_abs))
        throw numeric_error("GaussianWeighting: covariance is not symmetric");
    }
  chol_.resize(d * d);
  if (!linalg::cholesky(covariance_, d, chol_))
    throw numeric_error(
        "GaussianWeighting: covariance is not positive definite");
}

void GaussianWeighting::sample(Rng& rng, std::span<double> out) const {
  const std::size_t d = dim();
  std::vector<double> z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = rng.normal();
  for (std::size_t i = 0; i < d; ++i) {
    double s = mean_[i];
    for (std::size_t k = 0; k <= i; ++k) s += chol_[i * d + k] * z[k];
    out[i] = s;
  }
}

ProjectionDraw draw_projection(const GaussianWeighting& weighting,
                               const ProjectionConfig& cfg,
                               std::size_t param_dim, Rng& rng) {
  if (cfg.feature_count == 0)
    throw std::invalid_argument("projection needs at least one feature");
  if (weighting.dim() != param_dim)
    throw std::invalid_argument(
        "weighting dimension does not match the model parameter dimension");
  ProjectionDraw draw;
  draw.norm = cfg.norm;
  draw.feature_count = cfg.feature_count;
  draw.param_dim = param_dim;
  draw.points.resize(cfg.feature_count * param_dim);
  for (std::size_t j = 0; j < cfg.feature_count; ++j) {
    weighting.sample(rng,
                     {draw.points.data() + j * param_dim, param_dim});
  }
  if (cfg.norm == NormKind::fisher) {
    draw.coords.resize(cfg.feature_count);
    for (std::size_t j = 0; j < cfg.feature_count; ++j)
      draw.coords[j] = rng.uniform_index(param_dim);
  }
  return draw;
}

FeatureMatrix apply_projection(const ModelAdapter& model,
                               const ProjectionDraw& draw) {
  const std::size_t n = model.data_size();
  const std::size_t d = model.param_dim();
  const std::size_t j = draw.feature_count;
  if (d != draw.param_dim)
    throw std::invalid_argument("projection draw dimension mismatch");

  FeatureMatrix f(n, j);
  const double feat_scale =
      draw.norm == NormKind::fisher
          ? std::sqrt(static_cast<double>(d) / static_cast<double>(j))
          : std::sqrt(1.0 / static_cast<double>(j));

  std::vector<double> grad(d);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < j; ++col) {
      const std::span<const double> mu{draw.points.data() + col * d, d};
      double v;
      if (draw.norm == NormKind::fisher) {
        model.log_likelihood_grad(row, mu, grad);
        v = grad[draw.coords[col]];
      } else {
        v = model.log_likelihood(row, mu);
      }
      if (!std::isfinite(v))
        throw numeric_error("projection: non-finite value for datapoint " +
                            std::to_string(row) + " at sample " +
                            std::to_string(col));
      f.at(row, col) = feat_scale * v;
    }
  }
  return f;
}

FeatureMatrix project(const ModelAdapter& model,
                      const GaussianWeighting& weighting,
                      const ProjectionConfig& cfg, Rng& rng) {
  return apply_projection(model,
                          draw_projection(weighting, cfg, model.param_dim(), rng));
}

namespace {

// Central finite differences of the log-joint gradient, symmetrized.
void fd_hessian(const ModelAdapter& model, std::span<const double> theta,
                std::span<double> hess) {
  const std::size_t d = theta.size();
  std::vector<double> tp(theta.begin(), theta.end());
  std::vector<double> gp(d), gm(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double h = 1e-5 * (1.0 + std::abs(theta[i]));
    const double orig = tp[i];
    tp[i] = orig + h;
    model.log_joint_grad(tp, gp);
    tp[i] = orig - h;
    model.log_joint_grad(tp, gm);
    tp[i] = orig;
    for (std::size_t k = 0; k < d; ++k)
      hess[i * d + k] = (gp[k] - gm[k]) / (2.0 * h);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const double v = 0.5 * (hess[i * d + k] + hess[k * d + i]);
      hess[i * d + k] = v;
      hess[k * d + i] = v;
    }
}

}  // namespace

GaussianWeighting laplace_weighting(const ModelAdapter& model,
                                    const NewtonOptions& opts) {
  const std::size_t d = model.param_dim();
  std::vector<double> theta(d, 0.0);
  std::vector<double> grad(d), hess(d * d), lower(d * d), step(d);

  const auto negative_hessian = [&](std::span<const double> at) {
    if (!model.log_joint_hessian(at, hess)) fd_hessian(model, at, hess);
    for (double& v : hess) v = -v;
  };

  bool converged = false;
  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    model.log_joint_grad(theta, grad);
    if (std::sqrt(kernels::squared_norm(grad)) <= opts.gradient_tolerance) {
      converged = true;
      break;
    }
    negative_hessian(theta);
    if (!linalg::cholesky(hess, d, lower))
      throw numeric_error(
          "laplace_weighting: negative Hessian is not positive definite at "
          "the current iterate; consider adding diagonal jitter to the model");
    step.assign(grad.begin(), grad.end());
    linalg::cholesky_solve(lower, d, step);

    // Backtracking on the log joint; the Newton direction is an ascent
    // direction because the negative Hessian is positive definite.
    const double f0 = model.log_joint(theta);
    double slope = 0.0;
    for (std::size_t i = 0; i < d; ++i) slope += grad[i] * step[i];
    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> candidate(d);
    while (alpha >= 1e-12) {
      for (std::size_t i = 0; i < d; ++i)
        candidate[i] = theta[i] + alpha * step[i];
      if (model.log_joint(candidate) >= f0 + 1e-4 * alpha * slope) {
        theta = candidate;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled; the loop below reports non-convergence
  }

  if (!converged) {
    model.log_joint_grad(theta, grad);
    if (std::sqrt(kernels::squared_norm(grad)) > opts.gradient_tolerance)
      throw newton_failure(
          "laplace_weighting: Newton did not reach the gradient tolerance",
          theta);
  }

  negative_hessian(theta);
  if (!linalg::cholesky(hess, d, lower))
    throw numeric_error(
        "laplace_weighting: negative Hessian is not positive definite at the "
        "mode; consider adding diagonal jitter to the model");
  std::vector<double> cov = linalg::cholesky_inverse(lower, d);
  return GaussianWeighting(std::move(theta), std::move(cov));
}

FeatureMatrix exact_gaussian_embedding(const Dataset& data,
                                       const GaussianPosterior& posterior) {
  const std::size_t d = data.cols;
  if (posterior.dim() != d)
    throw std::invalid_argument("posterior dimension does not match data");
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += posterior.covariance[i * d + i];

  FeatureMatrix f(data.rows, d + 1);
  const double c = std::sqrt(trace);
  for (std::size_t n = 0; n < data.rows; ++n) {
    const auto y = data.row(n);
    f.at(n, 0) = c;
    for (std::size_t k = 0; k < d; ++k)
      f.at(n, k + 1) = posterior.mean[k] - y[k];
  }
  return f;
}

}  // namespace coreset
