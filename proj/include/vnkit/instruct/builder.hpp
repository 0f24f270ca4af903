// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vnkit/core/types.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::instruct {

enum class StorylineMode { generated, predefined };

const char* storyline_mode_name(StorylineMode m);
StorylineMode storyline_mode_from_name(std::string_view name);

/// One clip's slot in the serialized instruction. Every segment carries
/// exactly one controllable-signal block ([CONTROL] line: budget and, in
/// predefined mode, the requested label) placed immediately before the
/// label+narration span.
struct SegmentSpec {
  std::string clip_id;
  int position_pct = 0;
  std::string visual_placeholder;  // {{VIDEO:store:video/clip/lo-hi}}
  core::LengthRange budget;
  std::string unit_name;  // counting unit named in the control line
  std::optional<core::ScriptLabel> requested_label;
  std::optional<core::ScriptLabel> label;    // known label (context or target)
  std::optional<std::string> narration;      // known narration (context or target)
};

struct LossSpan {
  int segment_index = 0;  // 1-based
  std::string field;      // "label" | "narration"
};

struct InstructionRecord {
  std::string system_text;
  std::vector<std::string> knowledge_block;
  std::vector<SegmentSpec> segments;  // clips 1..clip_index
  int clip_index = 1;                 // 1-based
  std::vector<LossSpan> loss_spans;   // the (label, narration) of clip_index
};

struct BuilderConfig {
  std::string domain = "advertising";  // or "general"
  std::string language = "en";         // system text language: en | zh
  std::string store_id = "frames";
  text::CountingConfig counting;
  double rate = 5.0;
  int margin = 3;
};

/// Builds the instruction for one clip. `known` holds the (label, narration)
/// pairs already available, in clip order: clips 1..i-1 during generation,
/// 1..i when compiling training data (clip i's pair becomes the target).
/// Predefined mode requires a storyline of length n.
InstructionRecord build_instruction(const core::VideoRecord& video,
                                    const core::KnowledgeBase& knowledge, int clip_index,
                                    StorylineMode mode,
                                    const std::optional<core::Storyline>& storyline,
                                    std::span<const core::Narration> known,
                                    const BuilderConfig& cfg);

/// Flattens a record into the prompt grammar consumed by generator backends.
/// Ends after the final segment's control line when that segment has no
/// narration yet, ready for the backend to continue with
/// "LABEL: ...\nNARRATION: ...".
std::string serialize_prompt(const InstructionRecord& record);

/// Metadata describing the visual pipeline configuration a sample was
/// prepared for; recorded in every sample (adapter settings are provenance
/// only, nothing here runs a model).
struct SampleMeta {
  double tau = 0.9;
  std::size_t memory_capacity = 64;
  std::string counting_mode = "auto";
  std::string position_encoding = "pre_projector";
  int lora_r = 64;
  int lora_alpha = 16;
};

struct TrainingSample {
  std::string video_id;
  int clip_index = 1;
  nlohmann::json context;
  nlohmann::json targets;
  nlohmann::json metadata;

  nlohmann::json to_json() const;
};

/// Everything needed to compile one video's samples.
struct VideoSample {
  core::VideoRecord video;
  core::KnowledgeBase knowledge;
  core::Story story;
  core::Storyline storyline;
};

struct CompileIssue {
  std::string video_id;
  std::string message;
};

struct CompileResult {
  std::vector<TrainingSample> samples;
  std::vector<CompileIssue> issues;
};

/// One sample per (video, clip) in video order then clip order. Invalid
/// videos are reported and skipped; the stream continues.
CompileResult compile_training_samples(std::span<const VideoSample> videos,
                                       StorylineMode mode, const BuilderConfig& cfg,
                                       const SampleMeta& meta);

/// Serializes samples as JSONL (one object per line, byte-deterministic).
std::string to_jsonl(std::span<const TrainingSample> samples);

}  // namespace vnkit::instruct
