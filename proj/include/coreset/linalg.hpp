// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coreset::linalg {

// Minimal dense routines for the small (parameter-dimension) symmetric
// positive-definite matrices that appear in posteriors and weightings.
// Matrices are row-major d x d.

// Lower Cholesky factor of a; returns false when a is not positive
// definite. `lower` is overwritten (strictly-upper part zeroed).
bool cholesky(std::span<const double> a, std::size_t d,
              std::span<double> lower);

// Solves (L L^T) x = b in place given the lower factor.
void cholesky_solve(std::span<const double> lower, std::size_t d,
                    std::span<double> b);

// Inverse of (L L^T); result is symmetric by construction.
std::vector<double> cholesky_inverse(std::span<const double> lower,
                                     std::size_t d);

// log det(L L^T) = 2 * sum log L_ii
double cholesky_log_det(std::span<const double> lower, std::size_t d);

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

std::vector<double> identity(std::size_t d);

}  // namespace coreset::linalg
