// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vnkit/core/types.hpp"
#include "vnkit/gen/backend.hpp"
#include "vnkit/instruct/builder.hpp"

namespace vnkit::gen {

struct ParsedGeneration {
  core::ScriptLabel label = core::ScriptLabel::others;
  std::string narration;
  std::vector<std::string> warnings;
};

/// Extracts (label, narration) from raw generator output per the instruction
/// grammar. Unknown label names fall back to `others` with a warning; a
/// missing LABEL marker yields (others, full text) with a warning. Empty
/// output throws ParseError (the orchestrator retries).
ParsedGeneration parse_generation(const std::string& raw);

struct OrchestratorConfig {
  instruct::BuilderConfig builder;
  int max_retries = 3;  // attempts per clip
  std::uint64_t seed = 0;
  int max_new_tokens = 256;
};

struct Attempt {
  std::string prompt_hash;  // fnv1a-64 of the full prompt, hex
  std::string raw_output;
  std::string parsed_label;
  std::string parsed_narration;
  int unit_count = 0;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

struct ClipTrace {
  std::string clip_id;
  std::vector<Attempt> attempts;
  bool accepted = false;     // an attempt with zero violations was taken
  bool best_effort = false;  // retries exhausted; kept closest-to-budget attempt
  std::string error;         // backend failure after retries
};

struct GenerationTrace {
  std::vector<ClipTrace> clips;
  bool partial = false;  // some clip produced no narration at all
};

struct GenerationResult {
  core::Story story;
  core::Storyline storyline;
  GenerationTrace trace;
};

/// Sequential per-clip generation: build instruction (context = accepted
/// narrations so far), call the backend, parse, validate against the budget,
/// retry with a corrective line up to max_retries. In predefined mode the
/// output storyline equals the input; in generated mode it is the parsed
/// labels.
GenerationResult generate_story(const core::VideoRecord& video,
                                const core::KnowledgeBase& knowledge,
                                instruct::StorylineMode mode,
                                const std::optional<core::Storyline>& storyline,
                                GeneratorBackend& backend,
                                const OrchestratorConfig& cfg);

}  // namespace vnkit::gen
