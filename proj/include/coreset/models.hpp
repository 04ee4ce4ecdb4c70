// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "coreset/dataset.hpp"
#include "coreset/feature_matrix.hpp"

namespace coreset {

// ---------------------------------------------------------------------------
// Per-point likelihood primitives. Regression models use the augmented
// covariate z = [x, 1], so theta has dimension dim(x) + 1.

// Binary labels y in {-1, +1}; log p(y | x, theta) = -log(1 + exp(-y z'th)).
double logistic_log_likelihood(std::span<const double> theta,
                               std::span<const double> x, double y);
void logistic_log_likelihood_grad(std::span<const double> theta,
                                  std::span<const double> x, double y,
                                  std::span<double> grad);

// Counts y >= 0 with rate lambda = log(1 + exp(theta'z)).
double poisson_log_likelihood(std::span<const double> theta,
                              std::span<const double> x, double y);
void poisson_log_likelihood_grad(std::span<const double> theta,
                                 std::span<const double> x, double y,
                                 std::span<double> grad);

// Overflow-safe helpers shared by the models.
double log1p_exp(double u);      // log(1 + e^u)
double log_log1p_exp(double u);  // log(log(1 + e^u))
double sigmoid(double u);

// ---------------------------------------------------------------------------
// Model adapter: everything a construction pipeline needs from a model,
// bound to a dataset.

class ModelAdapter {
 public:
  virtual ~ModelAdapter() = default;

  virtual std::size_t param_dim() const = 0;
  virtual std::size_t data_size() const = 0;

  virtual double log_likelihood(std::size_t n,
                                std::span<const double> theta) const = 0;
  virtual void log_likelihood_grad(std::size_t n, std::span<const double> theta,
                                   std::span<double> grad) const = 0;

  virtual double log_prior(std::span<const double> theta) const = 0;
  virtual void log_prior_grad(std::span<const double> theta,
                              std::span<double> grad) const = 0;

  // Mean of the (Gaussian, identity-covariance) prior.
  virtual std::vector<double> prior_mean() const = 0;

  // Analytic Hessian of log prior + sum_n log-likelihood, row-major DxD.
  // Returns false when unavailable; callers fall back to finite
  // differences of the gradient.
  virtual bool log_joint_hessian(std::span<const double> /*theta*/,
                                 std::span<double> /*hess*/) const {
    return false;
  }

  double log_joint(std::span<const double> theta) const;
  void log_joint_grad(std::span<const double> theta,
                      std::span<double> grad) const;
};

// Unknown-mean Gaussian: prior N(mu0, I), likelihood y_n ~ N(theta, I).
class GaussianMeanModel : public ModelAdapter {
 public:
  GaussianMeanModel(Dataset data, std::vector<double> prior_mean);
  explicit GaussianMeanModel(Dataset data);  // zero prior mean

  std::size_t param_dim() const override { return data_.cols; }
  std::size_t data_size() const override { return data_.rows; }
  double log_likelihood(std::size_t n,
                        std::span<const double> theta) const override;
  void log_likelihood_grad(std::size_t n, std::span<const double> theta,
                           std::span<double> grad) const override;
  double log_prior(std::span<const double> theta) const override;
  void log_prior_grad(std::span<const double> theta,
                      std::span<double> grad) const override;
  std::vector<double> prior_mean() const override { return prior_mean_; }
  bool log_joint_hessian(std::span<const double> theta,
                         std::span<double> hess) const override;

  const Dataset& data() const { return data_; }

 private:
  Dataset data_;
  std::vector<double> prior_mean_;
};

// Logistic regression with N(0, I) prior on theta = [coefficients, bias].
class LogisticRegressionModel : public ModelAdapter {
 public:
  explicit LogisticRegressionModel(Dataset data);

  std::size_t param_dim() const override { return data_.cols + 1; }
  std::size_t data_size() const override { return data_.rows; }
  double log_likelihood(std::size_t n,
                        std::span<const double> theta) const override;
  void log_likelihood_grad(std::size_t n, std::span<const double> theta,
                           std::span<double> grad) const override;
  double log_prior(std::span<const double> theta) const override;
  void log_prior_grad(std::span<const double> theta,
                      std::span<double> grad) const override;
  std::vector<double> prior_mean() const override {
    return std::vector<double>(param_dim(), 0.0);
  }
  bool log_joint_hessian(std::span<const double> theta,
                         std::span<double> hess) const override;

 private:
  Dataset data_;
};

// Poisson regression with N(0, I) prior on theta = [coefficients, bias].
class PoissonRegressionModel : public ModelAdapter {
 public:
  explicit PoissonRegressionModel(Dataset data);

  std::size_t param_dim() const override { return data_.cols + 1; }
  std::size_t data_size() const override { return data_.rows; }
  double log_likelihood(std::size_t n,
                        std::span<const double> theta) const override;
  void log_likelihood_grad(std::size_t n, std::span<const double> theta,
                           std::span<double> grad) const override;
  double log_prior(std::span<const double> theta) const override;
  void log_prior_grad(std::span<const double> theta,
                      std::span<double> grad) const override;
  std::vector<double> prior_mean() const override {
    return std::vector<double>(param_dim(), 0.0);
  }
  bool log_joint_hessian(std::span<const double> theta,
                         std::span<double> hess) const override;

 private:
  Dataset data_;
};

// ---------------------------------------------------------------------------
// Closed forms for the Gaussian mean model.

struct GaussianPosterior {
  std::vector<double> mean;        // D
  std::vector<double> covariance;  // row-major D x D, symmetric PD
  std::size_t dim() const { return mean.size(); }
};

// Posterior for the full dataset: covariance I/(1+N),
// mean = covariance * (mu0 + sum_n y_n).
GaussianPosterior gaussian_exact_posterior(const Dataset& data,
                                           std::span<const double> mu0);

// Posterior when datapoint n is replicated w_n (fractionally) many times:
// covariance I/(1 + sum w_n), mean = covariance * (mu0 + sum w_n y_n).
// With unit weights this reproduces gaussian_exact_posterior bit-for-bit.
GaussianPosterior gaussian_coreset_posterior(const Dataset& data,
                                             const WeightVector& w,
                                             std::span<const double> mu0);

// KL(p || q) between Gaussians of dimension d:
//   0.5 { tr(Sq^-1 Sp) + (mq-mp)' Sq^-1 (mq-mp) - d + log |Sq|/|Sp| }.
double gaussian_kl(const GaussianPosterior& p, const GaussianPosterior& q);

// Worst-case share of datapoint n in the total quadratic log-likelihood:
//   (1/N) (1 + ||y_n - ybar||^2 / ((1/N) sum ||y_m||^2 - ||ybar||^2)).
// Throws when all points coincide (zero denominator).
std::vector<double> gaussian_sensitivity(const Dataset& data);

}  // namespace coreset
