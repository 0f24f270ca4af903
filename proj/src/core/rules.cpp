// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/core/rules.hpp"

#include <algorithm>
#include <cmath>

#include "vnkit/error.hpp"

namespace vnkit::core {

namespace {

// Round to nearest, ties to even, independent of the fenv rounding mode.
long long round_half_even(double x) {
  double f = std::floor(x);
  double frac = x - f;
  if (frac > 0.5) return static_cast<long long>(f) + 1;
  if (frac < 0.5) return static_cast<long long>(f);
  long long n = static_cast<long long>(f);
  return (n % 2 == 0) ? n : n + 1;
}

}  // namespace

LengthRange word_budget(double duration_s, double rate, int margin) {
  if (!(duration_s > 0.0)) {
    throw InvalidInputError("word_budget: duration must be positive");
  }
  if (!(rate > 0.0)) {
    throw InvalidInputError("word_budget: rate must be positive");
  }
  if (margin < 0) {
    throw InvalidInputError("word_budget: margin must be non-negative");
  }
  const long long center = std::llround(rate * duration_s);
  LengthRange r;
  r.lo = static_cast<int>(std::max<long long>(1, center - margin));
  r.hi = static_cast<int>(center + margin);
  r.hi = std::max(r.hi, r.lo);
  return r;
}

int relative_position(const ClipSpec& clip, const VideoRecord& video) {
  const auto it = std::find_if(video.clips.begin(), video.clips.end(),
                               [&](const ClipSpec& c) { return c.clip_id == clip.clip_id; });
  if (it == video.clips.end()) {
    throw InvalidInputError("relative_position: clip '" + clip.clip_id +
                            "' not part of video '" + video.video_id + "'");
  }
  if (!(video.total_duration_s > 0.0)) {
    throw InvalidInputError("relative_position: video has no duration");
  }
  const double p = 100.0 * it->midpoint_s() / video.total_duration_s;
  return static_cast<int>(round_half_even(p));
}

std::vector<StoryViolation> validate_story(const Story& story, const VideoRecord& video,
                                           const text::CountingConfig& counting) {
  std::vector<StoryViolation> out;
  const std::size_t n_clips = video.clips.size();
  const std::size_t n_narr = story.narrations.size();
  for (std::size_t i = n_narr; i < n_clips; ++i) {
    out.push_back({video.clips[i].clip_id, "missing_narration",
                   "no narration for clip index " + std::to_string(i + 1)});
  }
  for (std::size_t i = n_clips; i < n_narr; ++i) {
    out.push_back({"", "extra_narration",
                   "narration index " + std::to_string(i + 1) + " has no clip"});
  }
  const std::size_t n_common = std::min(n_clips, n_narr);
  for (std::size_t i = 0; i < n_common; ++i) {
    const auto& narr = story.narrations[i];
    const auto& clip = video.clips[i];
    const int recomputed = text::count_units(narr.text, counting);
    if (recomputed != narr.unit_count) {
      out.push_back({clip.clip_id, "count_mismatch",
                     "stored unit_count " + std::to_string(narr.unit_count) +
                         " != recomputed " + std::to_string(recomputed)});
    }
    if (!narr.budget.contains(recomputed)) {
      out.push_back({clip.clip_id, "budget_violation",
                     "unit_count " + std::to_string(recomputed) + " outside [" +
                         std::to_string(narr.budget.lo) + ", " +
                         std::to_string(narr.budget.hi) + "]"});
    }
  }
  return out;
}

}  // namespace vnkit::core
