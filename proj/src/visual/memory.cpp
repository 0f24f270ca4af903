// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/visual/memory.hpp"

#include <cmath>

#include "vnkit/error.hpp"
#include "vnkit/simd/kernels.hpp"

namespace vnkit::visual {

MemoryState::MemoryState(std::size_t capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw InvalidInputError("memory capacity must be >= 1");
  }
}

embed::EmbeddingVector MemoryState::unit_of(const std::vector<double>& sum) {
  double sq = 0.0;
  for (double v : sum) sq += v * v;
  embed::EmbeddingVector out;
  out.values.resize(sum.size());
  // Antipodal cancellation leaves nothing to normalize; keep the raw mean
  // direction (all zeros) rather than dividing by ~0.
  const double inv = sq > 1e-24 ? 1.0 / std::sqrt(sq) : 1.0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    out.values[i] = static_cast<float>(sum[i] * inv);
  }
  return out;
}

void MemoryState::absorb(std::span<const embed::EmbeddingVector> incoming) {
  for (const auto& v : incoming) {
    if (!slots_.empty() && v.dim() != slots_.front().sum.size()) {
      throw InvalidInputError("memory token dimension mismatch");
    }
    Slot s;
    s.sum.assign(v.values.begin(), v.values.end());
    s.unit = v;  // weight-1 slots keep the input verbatim
    s.weight = 1;
    s.run_start = total_absorbed_++;
    slots_.push_back(std::move(s));
  }
  merge_down();
}

void MemoryState::merge_down() {
  while (slots_.size() > capacity_) {
    // Most similar adjacent pair; ties take the smaller left index.
    std::size_t best = 0;
    double best_sim = -2.0;
    for (std::size_t i = 0; i + 1 < slots_.size(); ++i) {
      const double sim = embed::cosine(slots_[i].unit, slots_[i + 1].unit);
      if (sim > best_sim) {
        best_sim = sim;
        best = i;
      }
    }
    Slot& left = slots_[best];
    Slot& right = slots_[best + 1];
    for (std::size_t d = 0; d < left.sum.size(); ++d) left.sum[d] += right.sum[d];
    left.weight += right.weight;
    left.unit = unit_of(left.sum);
    slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
}

std::vector<embed::EmbeddingVector> MemoryState::tokens() const {
  std::vector<embed::EmbeddingVector> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(s.unit);
  return out;
}

std::vector<std::uint64_t> MemoryState::weights() const {
  std::vector<std::uint64_t> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(s.weight);
  return out;
}

std::vector<std::uint64_t> MemoryState::run_starts() const {
  std::vector<std::uint64_t> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(s.run_start);
  return out;
}

MemoryState consolidate_memory(MemoryState state,
                               std::span<const embed::EmbeddingVector> incoming) {
  state.absorb(incoming);
  return state;
}

}  // namespace vnkit::visual
