// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "coreset/errors.hpp"

namespace coreset {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
}

void check_budget(std::size_t m) {
  if (m == 0) throw std::invalid_argument("budget must be at least 1");
}

}  // namespace

double bennett_h(double y) {
  if (y < 0.0) throw std::invalid_argument("bennett_h: negative argument");
  return (1.0 + y) * std::log1p(y) - y;
}

double bennett_h_inv(double v) {
  if (v < 0.0) throw std::invalid_argument("bennett_h_inv: negative argument");
  if (v == 0.0) return 0.0;
  if (!std::isfinite(v))
    throw std::invalid_argument("bennett_h_inv: non-finite argument");
  double lo = 0.0;
  double hi = 1.0;
  while (bennett_h(hi) < v) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12 * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    if (bennett_h(mid) < v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double is_bound(const BoundParams& p) {
  check_delta(p.delta);
  check_budget(p.budget);
  if (p.eta <= 0.0) return 0.0;
  const double m = static_cast<double>(p.budget);
  const double log_term = std::log(1.0 / p.delta);
  const double v = p.eta_bar * p.eta_bar * log_term / (2.0 * m * p.eta * p.eta);
  double eta_m;
  if (!std::isfinite(v) || v > 1e300) {
    // H^-1 would overflow; eta_bar is always a valid (looser) cap.
    eta_m = p.eta_bar;
  } else {
    const double bennett =
        p.eta * std::sqrt(2.0 * m * p.eta * p.eta /
                          (p.eta_bar * p.eta_bar * log_term)) *
        bennett_h_inv(v);
    eta_m = std::min(p.eta_bar, bennett);
  }
  return p.sigma / std::sqrt(m) * (p.eta + eta_m * std::sqrt(2.0 * log_term));
}

double is_bound_simple(const BoundParams& p) {
  check_delta(p.delta);
  check_budget(p.budget);
  const double m = static_cast<double>(p.budget);
  return p.sigma * p.eta_bar / std::sqrt(m) *
         (1.0 + std::sqrt(2.0 * std::log(1.0 / p.delta)));
}

double fw_bound(const BoundParams& p) {
  check_budget(p.budget);
  const double m = static_cast<double>(p.budget);
  if (!p.nu.has_value()) return p.sigma * p.eta_bar / std::sqrt(m);

  const double nu = *p.nu;
  if (!(nu >= 0.0 && nu < 1.0))
    throw std::invalid_argument("fw_bound: nu must lie in [0, 1)");
  if (p.eta <= 0.0 || p.eta_bar <= 0.0) return 0.0;
  const double iters = m - 1.0;  // steps after initialization
  if (nu == 0.0) return iters == 0.0 ? p.sigma * p.eta : 0.0;
  const double denom2 = p.eta_bar * p.eta_bar * std::pow(nu, -2.0 * (m - 2.0)) +
                        p.eta * p.eta * iters;
  return p.sigma * p.eta * p.eta_bar * nu / std::sqrt(denom2);
}

double fw_bound_fixed_step(const BoundParams& p) {
  check_budget(p.budget);
  const double m = static_cast<double>(p.budget);
  return 2.0 * p.sigma * p.eta_bar / std::sqrt(3.0 * m + 1.0);
}

double distributed_is_bound(const BoundParams& p) {
  check_delta(p.delta);
  check_budget(p.budget);
  if (p.nodes == 0) throw std::invalid_argument("node count must be positive");
  const double m = static_cast<double>(p.budget);
  const double c = static_cast<double>(p.nodes);
  return p.sigma * p.eta_bar / std::sqrt(m) *
         (1.0 + std::sqrt(2.0 * std::log(c / p.delta)));
}

double distributed_fw_bound(const BoundParams& p) {
  check_budget(p.budget);
  return p.sigma * p.eta_bar / std::sqrt(static_cast<double>(p.budget));
}

double projection_bound(const BoundParams& p, double projected_sq_error,
                        double l1_weight_gap_sq) {
  check_delta(p.delta);
  if (!p.xi2.has_value())
    throw std::invalid_argument(
        "projection_bound: the sub-Gaussian constant xi2 is model dependent "
        "and must be estimated and supplied by the caller");
  if (p.feature_count == 0 || p.data_size == 0)
    throw std::invalid_argument("projection_bound: J and N are required");
  const double n = static_cast<double>(p.data_size);
  const double j = static_cast<double>(p.feature_count);
  return projected_sq_error +
         l1_weight_gap_sq *
             std::sqrt(2.0 * *p.xi2 / j * std::log(2.0 * n * n / p.delta));
}

double logistic_recursion_bound(double x0, double alpha, std::size_t n) {
  if (!(x0 >= 0.0 && x0 <= 1.0) || !(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument(
        "logistic_recursion_bound: x0 and alpha must lie in [0, 1]");
  if (n == 0) return x0;
  // alpha = 0 gives alpha^{-n} = inf and a zero bound, matching the iterates.
  const double an = std::pow(alpha, -static_cast<double>(n));
  return x0 / (an + x0 * static_cast<double>(n));
}

bool logistic_recursion_check(double x0, double alpha, std::size_t n) {
  const double bound = logistic_recursion_bound(x0, alpha, n);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) x = alpha * x * (1.0 - x);
  return x <= bound;
}

}  // namespace coreset
