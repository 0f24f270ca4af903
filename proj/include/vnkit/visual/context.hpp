// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vnkit/core/types.hpp"
#include "vnkit/embed/provider.hpp"
#include "vnkit/visual/memory.hpp"

namespace vnkit::visual {

/// Clip-position embedding table: one vector per integer percent 0..100.
/// Untrained initial values come from a seeded generator so runs reproduce;
/// a trained table would be loaded in its place.
class PositionTable {
 public:
  static PositionTable zeros(std::size_t dim);
  static PositionTable seeded(std::size_t dim, std::uint64_t seed,
                              float amplitude = 0.02f);

  std::size_t dim() const { return dim_; }

  /// Row for percent p; throws InvalidInputError outside 0..100.
  const embed::EmbeddingVector& row(int p) const;
  embed::EmbeddingVector& row(int p);

 private:
  explicit PositionTable(std::size_t dim);

  std::size_t dim_;
  std::vector<embed::EmbeddingVector> rows_;  // 101 entries
};

/// out[i] = tokens[i] + table[p]; length and order unchanged.
std::vector<embed::EmbeddingVector> encode_position(
    std::span<const embed::EmbeddingVector> tokens, int p, const PositionTable& table);

struct VisualParams {
  double tau = 0.9;
  std::size_t memory_capacity = 64;
};

/// What the generator sees for one clip: consolidated memory of everything
/// before it, the compressed current clip, and the clip's percent position.
struct VisualContext {
  std::vector<embed::EmbeddingVector> memory_tokens;
  std::vector<std::uint64_t> memory_weights;
  std::vector<embed::EmbeddingVector> current_tokens;
  int position_pct = 0;
};

/// Replays clips 1..clip_index-1 through compress+consolidate, compresses the
/// current clip, then adds the position row for this clip to every emitted
/// token. clip_index is 1-based; frame embeddings resolve through `frames`.
VisualContext build_visual_context(const core::VideoRecord& video, int clip_index,
                                   const VisualParams& params, const PositionTable& table,
                                   const embed::EmbeddingProvider& frames);

/// Frame sequence of one clip via the provider (keys = ClipSpec::frame_ids).
FrameSequence clip_frames(const core::ClipSpec& clip,
                          const embed::EmbeddingProvider& frames);

}  // namespace vnkit::visual
