// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "vnkit/embed/embedding.hpp"

namespace vnkit::visual {

/// Temporally ordered frame embeddings for one clip.
struct FrameSequence {
  std::vector<std::string> frame_ids;
  std::vector<embed::EmbeddingVector> embeddings;

  std::size_t size() const { return embeddings.size(); }
};

struct CompressResult {
  FrameSequence frames;
  std::vector<std::size_t> kept_indices;  // into the input sequence
};

/// Removes redundant adjacent frames: scan left to right, drop the later
/// frame of the first adjacent pair with cosine >= tau, restart, repeat to
/// fixpoint. The first frame is always retained and every adjacent pair of
/// the output has cosine < tau.
CompressResult compress_frames(const FrameSequence& seq, double tau);

}  // namespace vnkit::visual
