// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/visual/compress.hpp"

#include "vnkit/error.hpp"

namespace vnkit::visual {

CompressResult compress_frames(const FrameSequence& seq, double tau) {
  if (seq.embeddings.empty()) {
    throw InvalidInputError("compress_frames: empty frame sequence");
  }
  if (!(tau > 0.0) || tau > 1.0) {
    throw InvalidInputError("compress_frames: tau must be in (0, 1]");
  }

  // The drop-later/restart rule reduces to one pass against the last kept
  // frame: the prefix is already pairwise dissimilar, so after each removal
  // the first offending pair is again (last kept, next candidate).
  CompressResult out;
  out.kept_indices.push_back(0);
  for (std::size_t i = 1; i < seq.embeddings.size(); ++i) {
    const auto& last = seq.embeddings[out.kept_indices.back()];
    if (embed::cosine(last, seq.embeddings[i]) < tau) {
      out.kept_indices.push_back(i);
    }
  }

  out.frames.frame_ids.reserve(out.kept_indices.size());
  out.frames.embeddings.reserve(out.kept_indices.size());
  for (std::size_t idx : out.kept_indices) {
    if (idx < seq.frame_ids.size()) out.frames.frame_ids.push_back(seq.frame_ids[idx]);
    out.frames.embeddings.push_back(seq.embeddings[idx]);
  }
  return out;
}

}  // namespace vnkit::visual
