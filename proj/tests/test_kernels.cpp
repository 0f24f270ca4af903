// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vnkit/simd/kernels.hpp"
#include "vnkit/util/rng.hpp"

using namespace vnkit;

namespace {

std::vector<float> random_vec(util::SplitMix64& rng, std::size_t n) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(2.0 * rng.unit() - 1.0);
  return v;
}

struct BackendGuard {
  simd::Backend saved;
  BackendGuard() : saved(simd::active_backend()) {}
  ~BackendGuard() { simd::force_backend(saved); }
};

}  // namespace

TEST_CASE("scalar dot matches naive double accumulation") {
  BackendGuard guard;
  simd::force_backend(simd::Backend::scalar);
  util::SplitMix64 rng(11);
  const auto a = random_vec(rng, 37);
  const auto b = random_vec(rng, 37);
  double expect = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    expect += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  CHECK(simd::dot(a.data(), b.data(), a.size()) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("avx2 and scalar kernels agree") {
  if (!simd::backend_available(simd::Backend::avx2)) {
    MESSAGE("avx2 not available on this machine; skipping equivalence checks");
    return;
  }
  BackendGuard guard;
  util::SplitMix64 rng(42);

  // sizes straddling the vector width, including tails
  const std::size_t sizes[] = {1, 3, 7, 8, 9, 16, 24, 31, 64, 100, 257};
  for (std::size_t n : sizes) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);

    simd::force_backend(simd::Backend::scalar);
    const double dot_s = simd::dot(a.data(), b.data(), n);
    const double nrm_s = simd::squared_norm(a.data(), n);
    std::vector<float> add_s(n), scale_s(n);
    simd::add(add_s.data(), a.data(), b.data(), n);
    simd::scale(scale_s.data(), a.data(), 0.73f, n);
    std::vector<double> axpy_s(n, 0.25);
    simd::axpy(axpy_s.data(), a.data(), 1.75, n);

    simd::force_backend(simd::Backend::avx2);
    const double dot_v = simd::dot(a.data(), b.data(), n);
    const double nrm_v = simd::squared_norm(a.data(), n);
    std::vector<float> add_v(n), scale_v(n);
    simd::add(add_v.data(), a.data(), b.data(), n);
    simd::scale(scale_v.data(), a.data(), 0.73f, n);
    std::vector<double> axpy_v(n, 0.25);
    simd::axpy(axpy_v.data(), a.data(), 1.75, n);

    // reductions: equal up to summation order
    CHECK(dot_v == doctest::Approx(dot_s).epsilon(1e-12));
    CHECK(nrm_v == doctest::Approx(nrm_s).epsilon(1e-12));
    // elementwise: bit-identical
    CHECK(add_v == add_s);
    CHECK(scale_v == scale_s);
    CHECK(axpy_v == axpy_s);
  }
}

TEST_CASE("avx2 equivalence holds over many random lengths") {
  if (!simd::backend_available(simd::Backend::avx2)) return;
  BackendGuard guard;
  util::SplitMix64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = 1 + rng.bounded(129);
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    simd::force_backend(simd::Backend::scalar);
    const double s = simd::dot(a.data(), b.data(), n);
    simd::force_backend(simd::Backend::avx2);
    const double v = simd::dot(a.data(), b.data(), n);
    CHECK(std::abs(s - v) <= 1e-12 * (1.0 + std::abs(s)));
  }
}

TEST_CASE("force_backend rejects unavailable backends gracefully") {
  CHECK(simd::backend_available(simd::Backend::scalar));
  CHECK_NOTHROW(simd::force_backend(simd::active_backend()));
}
