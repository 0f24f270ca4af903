// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "vnkit/core/types.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::core {

/// Admissible narration length for a clip of `duration_s` seconds at
/// `rate` units per second: centre = round(rate * duration_s) with halves
/// away from zero, range [max(1, centre - margin), centre + margin].
LengthRange word_budget(double duration_s, double rate = 5.0, int margin = 3);

/// Percent position of the clip's midpoint within the video, rounded to the
/// nearest integer with ties to even (so [0,10] of a 40 s video is 12, the
/// last clip [30,40] is 88). The clip is matched by clip_id.
int relative_position(const ClipSpec& clip, const VideoRecord& video);

struct StoryViolation {
  std::string clip_id;
  std::string kind;    // missing_narration | extra_narration | budget_violation | count_mismatch
  std::string detail;
};

/// Structural check of a story against its video: one narration per clip,
/// stored unit counts consistent with the counting function, budgets met.
/// Violations are data, not errors.
std::vector<StoryViolation> validate_story(const Story& story, const VideoRecord& video,
                                           const text::CountingConfig& counting);

}  // namespace vnkit::core
