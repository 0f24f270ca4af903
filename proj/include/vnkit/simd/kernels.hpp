// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the embedding math (cosines, pooling,
// token merging). Scalar reference kernels are always available; an AVX2
// variant is selected at runtime when the CPU supports it. All dot-style
// reductions accumulate in double so results are stable to ~1e-15 across
// backends; elementwise kernels are bit-identical across backends.

namespace vnkit::simd {

enum class Backend { scalar, avx2 };

/// Backend chosen at startup (honours the VNKIT_SIMD env var: "scalar"/"avx2").
Backend active_backend();

bool backend_available(Backend b);

/// Force a backend, e.g. from equivalence tests. Throws InvalidInputError if
/// the requested backend is not available on this machine.
void force_backend(Backend b);

const char* backend_name(Backend b);

/// Sum_i a[i]*b[i], accumulated in double.
double dot(const float* a, const float* b, std::size_t n);

/// Sum_i a[i]^2, accumulated in double.
double squared_norm(const float* a, std::size_t n);

/// dst[i] = a[i] + b[i]. dst may alias a or b.
void add(float* dst, const float* a, const float* b, std::size_t n);

/// dst[i] = a[i] * s. dst may alias a.
void scale(float* dst, const float* a, float s, std::size_t n);

/// acc[i] += w * x[i] (double accumulator, float input).
void axpy(double* acc, const float* x, double w, std::size_t n);

}  // namespace vnkit::simd
