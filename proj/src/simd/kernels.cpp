// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "vnkit/error.hpp"

namespace vnkit::simd {

namespace {

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

double squared_norm_scalar(const float* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(a[i]);
  }
  return acc;
}

void add_scalar(float* dst, const float* a, const float* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void scale_scalar(float* dst, const float* a, float s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * s;
}

void axpy_scalar(double* acc, const float* x, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * static_cast<double>(x[i]);
}

struct KernelTable {
  Backend backend;
  double (*dot)(const float*, const float*, std::size_t);
  double (*squared_norm)(const float*, std::size_t);
  void (*add)(float*, const float*, const float*, std::size_t);
  void (*scale)(float*, const float*, float, std::size_t);
  void (*axpy)(double*, const float*, double, std::size_t);
};

constexpr KernelTable kScalarTable = {
    Backend::scalar, dot_scalar, squared_norm_scalar,
    add_scalar,      scale_scalar, axpy_scalar,
};

}  // namespace

#if defined(VNKIT_HAVE_AVX2)
// Defined in kernels_avx2.cpp (compiled with -mavx2 -mfma).
namespace avx2 {
double dot(const float*, const float*, std::size_t);
double squared_norm(const float*, std::size_t);
void add(float*, const float*, const float*, std::size_t);
void scale(float*, const float*, float, std::size_t);
void axpy(double*, const float*, double, std::size_t);
}  // namespace avx2

namespace {
constexpr KernelTable kAvx2Table = {
    Backend::avx2, avx2::dot, avx2::squared_norm,
    avx2::add,     avx2::scale, avx2::axpy,
};
}  // namespace
#endif

namespace {

bool avx2_supported() {
#if defined(VNKIT_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* select_table() {
  if (const char* env = std::getenv("VNKIT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
#if defined(VNKIT_HAVE_AVX2)
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return &kAvx2Table;
#endif
  }
#if defined(VNKIT_HAVE_AVX2)
  if (avx2_supported()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const KernelTable*>& table_slot() {
  static std::atomic<const KernelTable*> slot{select_table()};
  return slot;
}

const KernelTable& table() { return *table_slot().load(std::memory_order_relaxed); }

}  // namespace

Backend active_backend() { return table().backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_supported();
  }
  return false;
}

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw InvalidInputError(std::string("simd backend not available: ") + backend_name(b));
  }
  if (b == Backend::scalar) {
    table_slot().store(&kScalarTable, std::memory_order_relaxed);
    return;
  }
#if defined(VNKIT_HAVE_AVX2)
  table_slot().store(&kAvx2Table, std::memory_order_relaxed);
#endif
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "?";
}

double dot(const float* a, const float* b, std::size_t n) { return table().dot(a, b, n); }

double squared_norm(const float* a, std::size_t n) { return table().squared_norm(a, n); }

void add(float* dst, const float* a, const float* b, std::size_t n) {
  table().add(dst, a, b, n);
}

void scale(float* dst, const float* a, float s, std::size_t n) {
  table().scale(dst, a, s, n);
}

void axpy(double* acc, const float* x, double w, std::size_t n) {
  table().axpy(acc, x, w, n);
}

}  // namespace vnkit::simd
