// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vnkit/core/types.hpp"
#include "vnkit/embed/provider.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::metrics {

/// Knowledge relevance of a story. Per sentence: coarse = best cosine between
/// any knowledge point and the whole sentence; fine = mean over the sentence's
/// words of their best knowledge cosine; sentence score = (coarse + fine)/2
/// (coarse alone when the sentence has no words). Returns the mean over
/// sentences.
double info_sim(const core::Story& story, const core::KnowledgeBase& knowledge,
                const embed::EmbeddingProvider& text_provider,
                const text::PosTagger& tagger);

/// Knowledge diversity: a knowledge point is covered when some sentence, or
/// one of its words, has cosine strictly above `threshold` with it. Returns
/// covered count divided by the video duration in seconds.
double info_diverse(const core::Story& story, const core::KnowledgeBase& knowledge,
                    double duration_s, const embed::EmbeddingProvider& text_provider,
                    const text::PosTagger& tagger, double threshold = 0.9);

}  // namespace vnkit::metrics
