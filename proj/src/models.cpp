// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coreset/errors.hpp"
#include "coreset/kernels.hpp"
#include "coreset/linalg.hpp"

namespace coreset {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// theta' [x, 1] without materializing the augmented covariate.
double affine(std::span<const double> theta, std::span<const double> x) {
  return kernels::dot(theta.first(x.size()), x) + theta[x.size()];
}

void check_logistic_label(double y) {
  if (y != 1.0 && y != -1.0)
    throw std::invalid_argument("logistic labels must be -1 or +1");
}

// sigmoid(u) / log1p_exp(u); tends to 1 as u -> -inf and to 1/u as u -> inf.
double rate_ratio(double u) {
  if (u <= -30.0) return 1.0;
  return sigmoid(u) / log1p_exp(u);
}

}  // namespace

double log1p_exp(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

double log_log1p_exp(double u) {
  if (u <= -30.0) return u;  // log1p(e^u) ~ e^u, so the log is ~u
  return std::log(log1p_exp(u));
}

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double logistic_log_likelihood(std::span<const double> theta,
                               std::span<const double> x, double y) {
  check_logistic_label(y);
  return -log1p_exp(-y * affine(theta, x));
}

void logistic_log_likelihood_grad(std::span<const double> theta,
                                  std::span<const double> x, double y,
                                  std::span<double> grad) {
  check_logistic_label(y);
  const double m = y * affine(theta, x);
  const double c = y * sigmoid(-m);
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = c * x[i];
  grad[x.size()] = c;
}

double poisson_log_likelihood(std::span<const double> theta,
                              std::span<const double> x, double y) {
  if (y < 0.0)
    throw std::invalid_argument("poisson counts must be nonnegative");
  const double u = affine(theta, x);
  return y * log_log1p_exp(u) - log1p_exp(u) - std::lgamma(y + 1.0);
}

void poisson_log_likelihood_grad(std::span<const double> theta,
                                 std::span<const double> x, double y,
                                 std::span<double> grad) {
  if (y < 0.0)
    throw std::invalid_argument("poisson counts must be nonnegative");
  const double u = affine(theta, x);
  const double c = y * rate_ratio(u) - sigmoid(u);
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = c * x[i];
  grad[x.size()] = c;
}

// ---------------------------------------------------------------------------

double ModelAdapter::log_joint(std::span<const double> theta) const {
  double v = log_prior(theta);
  for (std::size_t n = 0; n < data_size(); ++n) v += log_likelihood(n, theta);
  return v;
}

void ModelAdapter::log_joint_grad(std::span<const double> theta,
                                  std::span<double> grad) const {
  log_prior_grad(theta, grad);
  std::vector<double> g(theta.size());
  for (std::size_t n = 0; n < data_size(); ++n) {
    log_likelihood_grad(n, theta, g);
    for (std::size_t i = 0; i < g.size(); ++i) grad[i] += g[i];
  }
}

// ---------------------------------------------------------------------------

GaussianMeanModel::GaussianMeanModel(Dataset data,
                                     std::vector<double> prior_mean)
    : data_(std::move(data)), prior_mean_(std::move(prior_mean)) {
  if (prior_mean_.size() != data_.cols)
    throw std::invalid_argument("prior mean dimension mismatch");
}

GaussianMeanModel::GaussianMeanModel(Dataset data)
    : GaussianMeanModel(std::move(data),
                        std::vector<double>(data.cols, 0.0)) {}

double GaussianMeanModel::log_likelihood(std::size_t n,
                                         std::span<const double> theta) const {
  const auto y = data_.row(n);
  double q = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - theta[i];
    q += d * d;
  }
  return -0.5 * q - 0.5 * static_cast<double>(y.size()) * kLogTwoPi;
}

void GaussianMeanModel::log_likelihood_grad(std::size_t n,
                                            std::span<const double> theta,
                                            std::span<double> grad) const {
  const auto y = data_.row(n);
  for (std::size_t i = 0; i < y.size(); ++i) grad[i] = y[i] - theta[i];
}

double GaussianMeanModel::log_prior(std::span<const double> theta) const {
  double q = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = theta[i] - prior_mean_[i];
    q += d * d;
  }
  return -0.5 * q - 0.5 * static_cast<double>(theta.size()) * kLogTwoPi;
}

void GaussianMeanModel::log_prior_grad(std::span<const double> theta,
                                       std::span<double> grad) const {
  for (std::size_t i = 0; i < theta.size(); ++i)
    grad[i] = prior_mean_[i] - theta[i];
}

bool GaussianMeanModel::log_joint_hessian(std::span<const double>,
                                          std::span<double> hess) const {
  const std::size_t d = param_dim();
  std::fill(hess.begin(), hess.end(), 0.0);
  const double diag = -(1.0 + static_cast<double>(data_.rows));
  for (std::size_t i = 0; i < d; ++i) hess[i * d + i] = diag;
  return true;
}

// ---------------------------------------------------------------------------

LogisticRegressionModel::LogisticRegressionModel(Dataset data)
    : data_(std::move(data)) {
  if (!data_.has_labels() && data_.rows > 0)
    throw std::invalid_argument("logistic regression requires labels");
  for (double y : data_.labels) check_logistic_label(y);
}

double LogisticRegressionModel::log_likelihood(
    std::size_t n, std::span<const double> theta) const {
  return logistic_log_likelihood(theta, data_.row(n), data_.labels[n]);
}

void LogisticRegressionModel::log_likelihood_grad(
    std::size_t n, std::span<const double> theta, std::span<double> grad) const {
  logistic_log_likelihood_grad(theta, data_.row(n), data_.labels[n], grad);
}

double LogisticRegressionModel::log_prior(std::span<const double> theta) const {
  return -0.5 * kernels::squared_norm(theta) -
         0.5 * static_cast<double>(theta.size()) * kLogTwoPi;
}

void LogisticRegressionModel::log_prior_grad(std::span<const double> theta,
                                             std::span<double> grad) const {
  for (std::size_t i = 0; i < theta.size(); ++i) grad[i] = -theta[i];
}

bool LogisticRegressionModel::log_joint_hessian(std::span<const double> theta,
                                                std::span<double> hess) const {
  const std::size_t d = param_dim();
  std::fill(hess.begin(), hess.end(), 0.0);
  for (std::size_t i = 0; i < d; ++i) hess[i * d + i] = -1.0;  // prior
  std::vector<double> z(d);
  for (std::size_t n = 0; n < data_.rows; ++n) {
    const auto x = data_.row(n);
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i];
    z[x.size()] = 1.0;
    const double m = data_.labels[n] * affine(theta, x);
    const double s = sigmoid(m);
    const double c = -s * (1.0 - s);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) hess[i * d + k] += c * z[i] * z[k];
  }
  return true;
}

// ---------------------------------------------------------------------------

PoissonRegressionModel::PoissonRegressionModel(Dataset data)
    : data_(std::move(data)) {
  if (!data_.has_labels() && data_.rows > 0)
    throw std::invalid_argument("poisson regression requires counts");
  for (double y : data_.labels) {
    if (y < 0.0)
      throw std::invalid_argument("poisson counts must be nonnegative");
  }
}

double PoissonRegressionModel::log_likelihood(
    std::size_t n, std::span<const double> theta) const {
  return poisson_log_likelihood(theta, data_.row(n), data_.labels[n]);
}

void PoissonRegressionModel::log_likelihood_grad(
    std::size_t n, std::span<const double> theta, std::span<double> grad) const {
  poisson_log_likelihood_grad(theta, data_.row(n), data_.labels[n], grad);
}

double PoissonRegressionModel::log_prior(std::span<const double> theta) const {
  return -0.5 * kernels::squared_norm(theta) -
         0.5 * static_cast<double>(theta.size()) * kLogTwoPi;
}

void PoissonRegressionModel::log_prior_grad(std::span<const double> theta,
                                            std::span<double> grad) const {
  for (std::size_t i = 0; i < theta.size(); ++i) grad[i] = -theta[i];
}

bool PoissonRegressionModel::log_joint_hessian(std::span<const double> theta,
                                               std::span<double> hess) const {
  const std::size_t d = param_dim();
  std::fill(hess.begin(), hess.end(), 0.0);
  for (std::size_t i = 0; i < d; ++i) hess[i * d + i] = -1.0;  // prior
  std::vector<double> z(d);
  for (std::size_t n = 0; n < data_.rows; ++n) {
    const auto x = data_.row(n);
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i];
    z[x.size()] = 1.0;
    const double u = affine(theta, x);
    const double y = data_.labels[n];
    const double lam = log1p_exp(u);
    const double s = sigmoid(u);
    const double sp = s * (1.0 - s);
    // d2/du2 of y log(lam) - lam
    double c;
    if (lam > 0.0) {
      c = y * (sp * lam - s * s) / (lam * lam) - sp;
    } else {
      c = -sp;
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) hess[i * d + k] += c * z[i] * z[k];
  }
  return true;
}

// ---------------------------------------------------------------------------

GaussianPosterior gaussian_coreset_posterior(const Dataset& data,
                                             const WeightVector& w,
                                             std::span<const double> mu0) {
  if (w.size() != data.rows)
    throw std::invalid_argument("weight length does not match dataset");
  if (mu0.size() != data.cols)
    throw std::invalid_argument("prior mean dimension mismatch");
  const std::size_t d = data.cols;

  double wsum = 0.0;
  std::vector<double> acc(mu0.begin(), mu0.end());
  for (std::size_t n = 0; n < data.rows; ++n) {
    wsum += w[n];
    if (w[n] != 0.0) kernels::axpy(w[n], data.row(n), acc);
  }

  GaussianPosterior post;
  const double prec = 1.0 + wsum;
  post.covariance.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) post.covariance[i * d + i] = 1.0 / prec;
  post.mean.resize(d);
  for (std::size_t i = 0; i < d; ++i) post.mean[i] = acc[i] / prec;
  return post;
}

GaussianPosterior gaussian_exact_posterior(const Dataset& data,
                                           std::span<const double> mu0) {
  if (data.rows == 0) throw std::invalid_argument("empty dataset");
  return gaussian_coreset_posterior(data, WeightVector::ones(data.rows), mu0);
}

double gaussian_kl(const GaussianPosterior& p, const GaussianPosterior& q) {
  const std::size_t d = p.dim();
  if (q.dim() != d)
    throw std::invalid_argument("gaussian_kl: dimension mismatch");

  std::vector<double> lq(d * d);
  if (!linalg::cholesky(q.covariance, d, lq))
    throw numeric_error("gaussian_kl: second covariance is singular");
  std::vector<double> lp(d * d);
  if (!linalg::cholesky(p.covariance, d, lp))
    throw numeric_error("gaussian_kl: first covariance is singular");

  // tr(Sq^-1 Sp): solve column-wise.
  double trace = 0.0;
  std::vector<double> col(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) col[i] = p.covariance[i * d + j];
    linalg::cholesky_solve(lq, d, col);
    trace += col[j];
  }

  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = q.mean[i] - p.mean[i];
  std::vector<double> solved = diff;
  linalg::cholesky_solve(lq, d, solved);
  double quad = 0.0;
  for (std::size_t i = 0; i < d; ++i) quad += diff[i] * solved[i];

  const double logdet =
      linalg::cholesky_log_det(lq, d) - linalg::cholesky_log_det(lp, d);
  return 0.5 * (trace + quad - static_cast<double>(d) + logdet);
}

std::vector<double> gaussian_sensitivity(const Dataset& data) {
  const std::size_t n = data.rows;
  const std::size_t d = data.cols;
  if (n < 2)
    throw std::invalid_argument(
        "gaussian_sensitivity needs at least two datapoints");

  std::vector<double> mean(d, 0.0);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = data.row(i);
    kernels::axpy(1.0, y, mean);
    sq += kernels::squared_norm(y);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& m : mean) m *= inv_n;
  const double denom = sq * inv_n - kernels::squared_norm(mean);
  if (denom <= 0.0)
    throw numeric_error(
        "gaussian_sensitivity: all datapoints coincide (zero variance)");

  std::vector<double> sens(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = data.row(i);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = y[k] - mean[k];
      dist2 += diff * diff;
    }
    sens[i] = inv_n * (1.0 + dist2 / denom);
  }
  return sens;
}

}  // namespace coreset
