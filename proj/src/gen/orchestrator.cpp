// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/gen/orchestrator.hpp"

#include <algorithm>

#include "vnkit/core/rules.hpp"
#include "vnkit/error.hpp"
#include "vnkit/util/rng.hpp"

namespace vnkit::gen {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

text::CountingMode effective_mode(const text::CountingConfig& cfg,
                                  const core::KnowledgeBase& knowledge,
                                  const std::string& language) {
  using Select = text::CountingConfig::Select;
  if (cfg.select == Select::token) return text::CountingMode::token_count;
  if (cfg.select == Select::character) return text::CountingMode::character_count;
  if (language == "zh") return text::CountingMode::character_count;
  for (const auto& k : knowledge) {
    if (text::contains_cjk(k.text)) return text::CountingMode::character_count;
  }
  return text::CountingMode::token_count;
}

}  // namespace

ParsedGeneration parse_generation(const std::string& raw) {
  const std::string body = trim(raw);
  if (body.empty()) throw ParseError("empty generator output");

  ParsedGeneration out;
  const std::string label_marker = "LABEL:";
  const std::string narration_marker = "NARRATION:";

  const auto label_pos = body.find(label_marker);
  if (label_pos == std::string::npos) {
    out.label = core::ScriptLabel::others;
    out.narration = body;
    out.warnings.push_back("missing LABEL marker; using label 'others'");
    return out;
  }

  const auto label_end = body.find('\n', label_pos);
  const std::string label_text =
      trim(body.substr(label_pos + label_marker.size(),
                       (label_end == std::string::npos ? body.size() : label_end) -
                           label_pos - label_marker.size()));
  if (auto parsed = core::script_label_from_name(label_text)) {
    out.label = *parsed;
  } else {
    out.label = core::ScriptLabel::others;
    out.warnings.push_back("unknown label '" + label_text + "'; using 'others'");
  }

  const auto narr_pos = body.find(narration_marker,
                                  label_end == std::string::npos ? body.size() : label_end);
  if (narr_pos == std::string::npos) {
    out.narration =
        label_end == std::string::npos ? "" : trim(body.substr(label_end + 1));
    out.warnings.push_back("missing NARRATION marker");
  } else {
    out.narration = trim(body.substr(narr_pos + narration_marker.size()));
  }
  if (out.narration.empty()) throw ParseError("generator output has no narration body");
  return out;
}

GenerationResult generate_story(const core::VideoRecord& video,
                                const core::KnowledgeBase& knowledge,
                                instruct::StorylineMode mode,
                                const std::optional<core::Storyline>& storyline,
                                GeneratorBackend& backend,
                                const OrchestratorConfig& cfg) {
  const std::size_t n = video.clips.size();
  if (n == 0) throw InvalidInputError("generate_story: video has no clips");
  if (mode == instruct::StorylineMode::predefined) {
    if (!storyline || storyline->size() != n) {
      throw InvalidInputError("generate_story: predefined mode needs a storyline of length " +
                              std::to_string(n));
    }
  }

  const text::CountingMode counting_mode =
      effective_mode(cfg.builder.counting, knowledge, cfg.builder.language);

  GenerationResult result;
  std::vector<std::string> knowledge_texts;
  for (const auto& k : knowledge) knowledge_texts.push_back(k.text);

  for (std::size_t i = 1; i <= n; ++i) {
    const auto& clip = video.clips[i - 1];
    const auto budget = core::word_budget(clip.duration_s(), cfg.builder.rate,
                                          cfg.builder.margin);
    const auto record = instruct::build_instruction(
        video, knowledge, static_cast<int>(i), mode, storyline,
        std::span<const core::Narration>(result.story.narrations.data(),
                                         result.story.narrations.size()),
        cfg.builder);
    std::string prompt = instruct::serialize_prompt(record);

    ClipTrace trace;
    trace.clip_id = clip.clip_id;

    GenRequest request;
    request.budget = budget;
    if (mode == instruct::StorylineMode::predefined) {
      request.requested_label = (*storyline)[i - 1];
    }
    request.clip_index = static_cast<int>(i);
    request.clip_count = n;
    request.knowledge = knowledge_texts;
    request.counting_mode = counting_mode;
    request.seed = cfg.seed;
    request.max_new_tokens = cfg.max_new_tokens;

    std::optional<core::Narration> accepted;
    std::optional<core::ScriptLabel> accepted_label;
    for (int attempt_no = 0; attempt_no < cfg.max_retries && !accepted; ++attempt_no) {
      request.prompt = prompt;
      Attempt attempt;
      attempt.prompt_hash = util::hex64(util::fnv1a64(prompt));
      std::string raw;
      try {
        raw = backend.generate(request);
      } catch (const Error& e) {
        attempt.violations.push_back(std::string("backend_error: ") + e.what());
        trace.attempts.push_back(std::move(attempt));
        continue;
      }
      attempt.raw_output = raw;

      ParsedGeneration parsed;
      try {
        parsed = parse_generation(raw);
      } catch (const ParseError& e) {
        attempt.violations.push_back(std::string("parse_error: ") + e.what());
        trace.attempts.push_back(std::move(attempt));
        prompt += "[CORRECTION] respond exactly as 'LABEL: <label>' then "
                  "'NARRATION: <text>'\n";
        continue;
      }
      attempt.parsed_label = core::script_label_name(parsed.label);
      attempt.parsed_narration = parsed.narration;
      attempt.warnings = parsed.warnings;
      attempt.unit_count = text::unit_count(parsed.narration, counting_mode);

      if (!budget.contains(attempt.unit_count)) {
        attempt.violations.push_back(
            "budget_violation: unit_count " + std::to_string(attempt.unit_count) +
            " outside [" + std::to_string(budget.lo) + ", " + std::to_string(budget.hi) +
            "]");
      }
      if (request.requested_label && parsed.label != *request.requested_label) {
        attempt.violations.push_back(
            std::string("label_mismatch: expected ") +
            core::script_label_name(*request.requested_label) + ", got " +
            core::script_label_name(parsed.label));
      }

      const bool ok = attempt.violations.empty();
      trace.attempts.push_back(std::move(attempt));
      if (ok) {
        accepted = core::Narration{parsed.narration, parsed.label, budget,
                                   trace.attempts.back().unit_count};
        accepted_label = parsed.label;
        trace.accepted = true;
      } else {
        prompt += "[CORRECTION] " + trace.attempts.back().violations.front() +
                  "; rewrite the narration between " + std::to_string(budget.lo) +
                  " and " + std::to_string(budget.hi) + " " +
                  text::counting_mode_name(counting_mode) + " units\n";
      }
    }

    if (!accepted) {
      // Keep the parsed attempt closest to the budget, if any parsed at all.
      const Attempt* best = nullptr;
      int best_distance = 0;
      for (const auto& a : trace.attempts) {
        if (a.parsed_narration.empty()) continue;
        const int d = budget.distance(a.unit_count);
        if (best == nullptr || d < best_distance) {
          best = &a;
          best_distance = d;
        }
      }
      if (best != nullptr) {
        auto label = core::script_label_from_name(best->parsed_label)
                         .value_or(core::ScriptLabel::others);
        accepted = core::Narration{best->parsed_narration, label, budget, best->unit_count};
        accepted_label = label;
        trace.best_effort = true;
      } else {
        trace.error = "no usable generation after " + std::to_string(cfg.max_retries) +
                      " attempts";
        result.trace.partial = true;
        accepted = core::Narration{"", core::ScriptLabel::others, budget, 0};
        accepted_label = core::ScriptLabel::others;
      }
    }

    result.story.narrations.push_back(*accepted);
    result.storyline.push_back(mode == instruct::StorylineMode::predefined
                                   ? (*storyline)[i - 1]
                                   : *accepted_label);
    result.trace.clips.push_back(std::move(trace));
  }
  return result;
}

}  // namespace vnkit::gen
