// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace coreset::kernels {

// Dense double-precision inner loops used by the row-vector machinery.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// selected at startup when the CPU supports it. The two variants agree up
// to floating-point reassociation and are equivalence-tested.

enum class Backend { scalar, avx2 };

Backend active_backend();
// Force a backend (used by tests and benchmarks). Returns false when the
// requested backend is not available in this build / on this CPU.
bool set_backend(Backend b);
bool backend_available(Backend b);
std::string_view backend_name(Backend b);

// sum_i a[i] * b[i]; a and b must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// x[i] *= alpha
void scale(double alpha, std::span<double> x);

inline double squared_norm(std::span<const double> x) { return dot(x, x); }

}  // namespace coreset::kernels
