// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/visual/context.hpp"

#include "vnkit/core/rules.hpp"
#include "vnkit/error.hpp"
#include "vnkit/simd/kernels.hpp"
#include "vnkit/util/rng.hpp"
#include "vnkit/visual/compress.hpp"

namespace vnkit::visual {

PositionTable::PositionTable(std::size_t dim) : dim_(dim), rows_(101) {
  for (auto& r : rows_) r.values.assign(dim, 0.0f);
}

PositionTable PositionTable::zeros(std::size_t dim) { return PositionTable(dim); }

PositionTable PositionTable::seeded(std::size_t dim, std::uint64_t seed, float amplitude) {
  PositionTable t(dim);
  util::SplitMix64 rng(seed);
  for (auto& r : t.rows_) {
    for (auto& v : r.values) {
      v = static_cast<float>((2.0 * rng.unit() - 1.0) * amplitude);
    }
  }
  return t;
}

const embed::EmbeddingVector& PositionTable::row(int p) const {
  if (p < 0 || p > 100) {
    throw InvalidInputError("position percent out of range: " + std::to_string(p));
  }
  return rows_[static_cast<std::size_t>(p)];
}

embed::EmbeddingVector& PositionTable::row(int p) {
  if (p < 0 || p > 100) {
    throw InvalidInputError("position percent out of range: " + std::to_string(p));
  }
  return rows_[static_cast<std::size_t>(p)];
}

std::vector<embed::EmbeddingVector> encode_position(
    std::span<const embed::EmbeddingVector> tokens, int p, const PositionTable& table) {
  const auto& pos = table.row(p);
  std::vector<embed::EmbeddingVector> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.dim() != table.dim()) {
      throw InvalidInputError("encode_position: token dimension mismatch");
    }
    embed::EmbeddingVector shifted;
    shifted.values.resize(t.dim());
    simd::add(shifted.data(), t.data(), pos.data(), t.dim());
    out.push_back(std::move(shifted));
  }
  return out;
}

FrameSequence clip_frames(const core::ClipSpec& clip,
                          const embed::EmbeddingProvider& frames) {
  FrameSequence seq;
  seq.frame_ids = clip.frame_ids;
  seq.embeddings.reserve(clip.frame_ids.size());
  for (const auto& id : clip.frame_ids) seq.embeddings.push_back(frames.get(id));
  return seq;
}

VisualContext build_visual_context(const core::VideoRecord& video, int clip_index,
                                   const VisualParams& params, const PositionTable& table,
                                   const embed::EmbeddingProvider& frames) {
  if (clip_index < 1 || static_cast<std::size_t>(clip_index) > video.clips.size()) {
    throw InvalidInputError("build_visual_context: clip_index out of range");
  }

  MemoryState memory(params.memory_capacity);
  for (int j = 0; j + 1 < clip_index; ++j) {
    const auto compressed =
        compress_frames(clip_frames(video.clips[static_cast<std::size_t>(j)], frames),
                        params.tau);
    memory.absorb(compressed.frames.embeddings);
  }

  const auto& clip = video.clips[static_cast<std::size_t>(clip_index - 1)];
  const auto current = compress_frames(clip_frames(clip, frames), params.tau);

  VisualContext ctx;
  ctx.position_pct = core::relative_position(clip, video);
  ctx.memory_weights = memory.weights();
  const auto memory_tokens = memory.tokens();
  ctx.memory_tokens = encode_position(memory_tokens, ctx.position_pct, table);
  ctx.current_tokens = encode_position(current.frames.embeddings, ctx.position_pct, table);
  return ctx;
}

}  // namespace vnkit::visual
