// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace vnkit::embed {

/// A fixed-dimension embedding. Providers hand these out L2-normalized
/// (norm 1 within 1e-5); all similarity math is then a plain dot product.
struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dim() const { return values.size(); }
  const float* data() const { return values.data(); }
  float* data() { return values.data(); }
};

/// L2 norm, accumulated in double.
double norm(const EmbeddingVector& v);

/// Returns v scaled to unit length. Zero vectors (norm < 1e-12) are returned
/// unchanged.
EmbeddingVector normalized(const EmbeddingVector& v);

/// Dot product of two same-dimension vectors; equals the cosine when both are
/// normalized. Throws InvalidInputError on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace vnkit::embed
