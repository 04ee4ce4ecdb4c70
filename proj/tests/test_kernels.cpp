// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "coreset/kernels.hpp"
#include "coreset/rng.hpp"

using namespace coreset;

namespace {

// Sizes straddling the vector widths and unrolled block boundaries.
const std::vector<std::size_t> kSizes{0,  1,  2,  3,  4,  5,  7,  8,
                                      9,  15, 16, 17, 31, 32, 33, 63,
                                      64, 100, 1000};

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match simple loops") {
  BackendGuard guard;
  REQUIRE(kernels::set_backend(kernels::Backend::scalar));
  Rng rng(7);
  for (std::size_t n : kSizes) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) expected += a[i] * b[i];
    CHECK(kernels::dot(a, b) == doctest::Approx(expected).epsilon(1e-14));

    std::vector<double> y = b;
    kernels::axpy(0.37, a, y);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y[i] == doctest::Approx(b[i] + 0.37 * a[i]));

    std::vector<double> x = a;
    kernels::scale(-2.5, x);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == -2.5 * a[i]);
  }
}

TEST_CASE("simd backend agrees with the scalar reference") {
  if (!kernels::backend_available(kernels::Backend::avx2)) {
    MESSAGE("avx2 backend not available; skipping equivalence check");
    return;
  }
  BackendGuard guard;
  Rng rng(11);
  for (std::size_t n : kSizes) {
    std::vector<double> a(n), b(n);
    double abs_sum = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
      abs_sum += std::abs(a[i] * b[i]);
    }

    REQUIRE(kernels::set_backend(kernels::Backend::scalar));
    const double dot_ref = kernels::dot(a, b);
    std::vector<double> axpy_ref = b;
    kernels::axpy(1.75, a, axpy_ref);
    std::vector<double> scale_ref = a;
    kernels::scale(0.125, scale_ref);

    REQUIRE(kernels::set_backend(kernels::Backend::avx2));
    const double dot_simd = kernels::dot(a, b);
    std::vector<double> axpy_simd = b;
    kernels::axpy(1.75, a, axpy_simd);
    std::vector<double> scale_simd = a;
    kernels::scale(0.125, scale_simd);

    // FMA reassociation changes rounding, not the value.
    CHECK(std::abs(dot_ref - dot_simd) <= 1e-13 * abs_sum);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(axpy_simd[i] == doctest::Approx(axpy_ref[i]).epsilon(1e-13));
      CHECK(scale_simd[i] == scale_ref[i]);  // single multiply: exact
    }
  }
}

TEST_CASE("backend selection round trips") {
  BackendGuard guard;
  REQUIRE(kernels::set_backend(kernels::Backend::scalar));
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(kernels::backend_name(kernels::Backend::scalar) == "scalar");
  CHECK(kernels::backend_name(kernels::Backend::avx2) == "avx2");
  if (kernels::backend_available(kernels::Backend::avx2)) {
    REQUIRE(kernels::set_backend(kernels::Backend::avx2));
    CHECK(kernels::active_backend() == kernels::Backend::avx2);
  }
}
