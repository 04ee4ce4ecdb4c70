// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>

namespace coreset {

// Inputs to the closed-form error guarantees. sigma/eta/eta_bar come from
// AlignmentDiagnostics; the rest parameterize the individual bounds.
struct BoundParams {
  double sigma = 0.0;
  double eta = 0.0;
  double eta_bar = 0.0;
  std::size_t budget = 1;           // M
  double delta = 0.01;              // confidence level, in (0,1)
  std::size_t nodes = 1;            // C, for the distributed forms
  std::optional<double> nu;         // hull-width constant, in [0,1)
  std::optional<double> xi2;        // sub-Gaussian constant for projections
  std::size_t feature_count = 0;    // J
  std::size_t data_size = 0;        // N
};

// H(y) = (1+y) log(1+y) - y, convex and increasing on [0, inf).
double bennett_h(double y);
// Inverse by bracketed bisection; exact at 0.
double bennett_h_inv(double v);

// High-probability error bound for the importance-sampling construction:
//   (sigma/sqrt(M)) (eta + eta_M sqrt(2 log(1/delta)))
// with eta_M = min(eta_bar, eta sqrt(2 M eta^2/(eta_bar^2 log(1/delta)))
//                  * H^-1(eta_bar^2 log(1/delta) / (2 M eta^2))).
// Returns 0 when eta = 0 (perfectly aligned rows).
double is_bound(const BoundParams& p);

// Simpler (weaker) form: (sigma eta_bar / sqrt(M)) (1 + sqrt(2 log(1/delta))).
double is_bound_simple(const BoundParams& p);

// Deterministic line-search bound:
//   sigma eta eta_bar nu / sqrt(eta_bar^2 nu^{-2(M-2)} + eta^2 (M-1))
// when nu is supplied, else the weaker sigma eta_bar / sqrt(M).
double fw_bound(const BoundParams& p);

// Fixed-step variant: 2 sigma eta_bar / sqrt(3M + 1).
double fw_bound_fixed_step(const BoundParams& p);

// Merged-coreset guarantees for C nodes each running budget M.
double distributed_is_bound(const BoundParams& p);
double distributed_fw_bound(const BoundParams& p);

// Upper bound on the true squared error given the projected squared error:
//   projected_sq_error + l1_weight_gap^2 sqrt((2 xi2 / J) log(2 N^2/delta))
// where l1_weight_gap = sum_n |w_n - 1|. Requires xi2, J, N.
double projection_bound(const BoundParams& p, double projected_sq_error,
                        double l1_weight_gap_sq);

// x_0 / (alpha^{-n} + x_0 n), the closed-form cap on the damped logistic
// recursion x_{k+1} = alpha x_k (1 - x_k) for x_0, alpha in [0, 1].
double logistic_recursion_bound(double x0, double alpha, std::size_t n);
// Iterates the recursion and confirms x_n stays at or below the cap.
bool logistic_recursion_check(double x0, double alpha, std::size_t n);

}  // namespace coreset
