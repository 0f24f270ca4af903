// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vnkit/core/types.hpp"
#include "vnkit/embed/provider.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::metrics {

/// Frame embeddings per clip, outer index = clip order.
using ClipFrameEmbeddings = std::vector<std::vector<embed::EmbeddingVector>>;

enum class CoarsePooling { per_clip, whole_video };

/// Visual relevance of a story against its clips.
///
/// Per clip: coarse = cosine(mean-pooled normalized frame embedding, sentence
/// embedding); fine = F1 of word->frame / frame->word best-match cosines over
/// the visually relevant words; clip score = (coarse + fine)/2, or coarse
/// alone when the narration has no visually relevant words. Returns the mean
/// over clips. Sentence and word embeddings are keyed by their literal text.
double emscore(const core::Story& story, const ClipFrameEmbeddings& clip_frames,
               const embed::EmbeddingProvider& text_provider,
               const text::PosTagger& tagger,
               CoarsePooling pooling = CoarsePooling::per_clip);

/// Mean of emscore() and its text-text analogue where the reference
/// narrations stand in for the video: the reference sentence embedding
/// replaces the pooled frames and the reference's relevant words replace the
/// individual frames.
double emscore_ref(const core::Story& story, const ClipFrameEmbeddings& clip_frames,
                   const core::Story& reference,
                   const embed::EmbeddingProvider& text_provider,
                   const text::PosTagger& tagger,
                   CoarsePooling pooling = CoarsePooling::per_clip);

}  // namespace vnkit::metrics
