// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vnkit/core/types.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::metrics {

/// Fraction of narrations whose unit_count falls inside their budget.
double length_accuracy(const core::Story& story);

/// Fraction of clips whose generated label equals the requested one
/// (predefined-storyline mode). Throws on length mismatch.
double label_match_accuracy(const core::Story& story, const core::Storyline& requested);

/// Intra-story repetition in [0, 100]: for each sentence after the first, the
/// fraction of its distinct tokens already seen in the preceding `window`
/// sentences (0 = all preceding), averaged and scaled by 100. Sentences
/// without tokens contribute 0; single-sentence stories score 0.
double intra_repetition(const core::Story& story, const text::PosTagger& tagger,
                        int window = 0);

}  // namespace vnkit::metrics
