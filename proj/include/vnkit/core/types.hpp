// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vnkit::core {

/// The closed script-label taxonomy. Serialized names are the snake_case
/// strings below, bit-exact, in every file and report.
enum class ScriptLabel {
  social_proof,
  sore_point,
  call_to_action,
  design_of_appearance,
  ingredient_material_texture,
  product_trial,
  product_effect,
  product_security,
  specific_characteristics,
  authoritative_certificate,
  production_process,
  others,
};

inline constexpr int kScriptLabelCount = 12;

const char* script_label_name(ScriptLabel l);

/// Parses a serialized label name; nullopt for anything outside the taxonomy.
std::optional<ScriptLabel> script_label_from_name(std::string_view name);

/// All 12 labels in declaration order.
const std::vector<ScriptLabel>& all_script_labels();

struct ClipSpec {
  std::string clip_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::string> frame_ids;

  double duration_s() const { return end_s - start_s; }
  double midpoint_s() const { return 0.5 * (start_s + end_s); }
};

struct VideoRecord {
  std::string video_id;
  std::vector<ClipSpec> clips;
  double total_duration_s = 0.0;

  std::size_t clip_count() const { return clips.size(); }
};

struct KnowledgePoint {
  std::string kp_id;
  std::string text;
};

using KnowledgeBase = std::vector<KnowledgePoint>;

/// Inclusive admissible unit-count range for one narration.
struct LengthRange {
  int lo = 1;
  int hi = 1;

  bool contains(int n) const { return n >= lo && n <= hi; }
  /// 0 inside the range, otherwise distance to the nearest bound.
  int distance(int n) const { return n < lo ? lo - n : (n > hi ? n - hi : 0); }
};

struct Narration {
  std::string text;
  ScriptLabel label = ScriptLabel::others;
  LengthRange budget;
  int unit_count = 0;
};

struct Story {
  std::vector<Narration> narrations;
};

using Storyline = std::vector<ScriptLabel>;

}  // namespace vnkit::core
