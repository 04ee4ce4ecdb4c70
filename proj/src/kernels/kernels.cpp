// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string_view>

namespace coreset::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  Backend backend;
};

constexpr KernelTable kScalarTable{dot_scalar, axpy_scalar, scale_scalar,
                                   Backend::scalar};

}  // namespace

#if defined(CORESET_HAVE_AVX2)
// Defined in kernels_avx2.cpp, compiled with -mavx2 -mfma. Only called
// after a runtime CPU feature check.
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scale_avx2(double alpha, double* x, std::size_t n);

namespace {
constexpr KernelTable kAvx2Table{dot_avx2, axpy_avx2, scale_avx2,
                                 Backend::avx2};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
}  // namespace
#endif  // CORESET_HAVE_AVX2

namespace {

const KernelTable* resolve_default() {
  if (const char* env = std::getenv("CORESET_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return &kScalarTable;
#if defined(CORESET_HAVE_AVX2)
    if (want == "avx2" && cpu_has_avx2()) return &kAvx2Table;
#endif
  }
#if defined(CORESET_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

const KernelTable*& active_table() {
  static const KernelTable* table = resolve_default();
  return table;
}

}  // namespace

Backend active_backend() { return active_table()->backend; }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(CORESET_HAVE_AVX2)
  if (b == Backend::avx2) return cpu_has_avx2();
#endif
  return false;
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  if (b == Backend::scalar) {
    active_table() = &kScalarTable;
    return true;
  }
#if defined(CORESET_HAVE_AVX2)
  active_table() = &kAvx2Table;
  return true;
#else
  return false;
#endif
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_table()->dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active_table()->axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
  active_table()->scale(alpha, x.data(), x.size());
}

}  // namespace coreset::kernels
