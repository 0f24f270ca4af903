// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vnkit/embed/embedding.hpp"

namespace vnkit::visual {

/// Fixed-capacity visual memory. Absorbed tokens are appended and then the
/// most similar ADJACENT pair is merged repeatedly until the memory fits its
/// capacity (ties: smaller left index). Each slot represents a contiguous run
/// of absorbed tokens; the representative is the weighted mean of the run's
/// original unit vectors, renormalized. Temporal order is preserved and the
/// slot weights always sum to the number of tokens ever absorbed.
class MemoryState {
 public:
  /// Capacity must be >= 1. Dimension is fixed by the first absorbed token.
  explicit MemoryState(std::size_t capacity);

  void absorb(std::span<const embed::EmbeddingVector> incoming);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return slots_.size(); }
  std::uint64_t total_absorbed() const { return total_absorbed_; }

  /// Unit-norm representatives, temporal order.
  std::vector<embed::EmbeddingVector> tokens() const;
  std::vector<std::uint64_t> weights() const;
  /// Index (into the absorbed sequence) of the first token covered by each
  /// slot; together with weights this describes the run partition.
  std::vector<std::uint64_t> run_starts() const;

 private:
  struct Slot {
    std::vector<double> sum;          // sum of absorbed unit vectors
    embed::EmbeddingVector unit;      // normalize(sum); verbatim input while weight==1
    std::uint64_t weight = 0;
    std::uint64_t run_start = 0;
  };

  void merge_down();
  static embed::EmbeddingVector unit_of(const std::vector<double>& sum);

  std::size_t capacity_;
  std::uint64_t total_absorbed_ = 0;
  std::vector<Slot> slots_;
};

/// Value-style wrapper over MemoryState::absorb.
MemoryState consolidate_memory(MemoryState state,
                               std::span<const embed::EmbeddingVector> incoming);

}  // namespace vnkit::visual
