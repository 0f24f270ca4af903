// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/embed/embedding.hpp"

#include <cmath>

#include "vnkit/error.hpp"
#include "vnkit/simd/kernels.hpp"

namespace vnkit::embed {

double norm(const EmbeddingVector& v) {
  return std::sqrt(simd::squared_norm(v.data(), v.dim()));
}

EmbeddingVector normalized(const EmbeddingVector& v) {
  const double n = norm(v);
  if (n < 1e-12) return v;
  EmbeddingVector out;
  out.values.resize(v.dim());
  simd::scale(out.data(), v.data(), static_cast<float>(1.0 / n), v.dim());
  return out;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InvalidInputError("cosine: dimension mismatch (" + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()) + ")");
  }
  return simd::dot(a.data(), b.data(), a.dim());
}

}  // namespace vnkit::embed
