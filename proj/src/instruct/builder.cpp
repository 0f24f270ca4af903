// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/instruct/builder.hpp"

#include <sstream>

#include "vnkit/core/rules.hpp"
#include "vnkit/error.hpp"
#include "vnkit/version.hpp"

namespace vnkit::instruct {

namespace {

// System templates. The domain slot switches between the advertising setting
// and the general setting; both ship an English and a Chinese wording.
const char* system_text_for(const std::string& domain, const std::string& language) {
  const bool zh = language == "zh";
  if (domain == "advertising") {
    if (zh) {
      return "你是一位资深的广告文案撰写人。请按顺序观看视频片段，为每个片段写一句口播文案。"
             "只使用下方列出的产品信息，严格遵守每个片段控制行中的字数范围"
             "（以及给出的脚本标签），并保持整个故事连贯。";
    }
    return "You are an experienced advertising copywriter. Watch the video clips in "
           "order and write one voice-over narration per clip. Use only the product "
           "knowledge listed below, follow each clip's control line (length range "
           "and, when given, the script label), and keep the story coherent across "
           "clips.";
  }
  if (zh) {
    return "你是一个能够理解视频内容的助手。请按顺序为每个视频片段写一句解说，"
           "只使用下方提供的主题信息，并遵守每个片段控制行中的字数范围。";
  }
  return "You are an assistant that understands video content. Write one narration "
         "per clip in order, using only the topic information provided below and "
         "respecting each clip's control line.";
}

std::string control_line(const SegmentSpec& seg) {
  std::ostringstream os;
  os << "[CONTROL] length=" << seg.budget.lo << "-" << seg.budget.hi
     << " unit=" << seg.unit_name;
  if (seg.requested_label) {
    os << " label=" << core::script_label_name(*seg.requested_label);
  }
  return os.str();
}

std::string resolve_unit_name(const BuilderConfig& cfg,
                              const core::KnowledgeBase& knowledge) {
  using Select = text::CountingConfig::Select;
  if (cfg.counting.select == Select::token) return "token_count";
  if (cfg.counting.select == Select::character) return "character_count";
  if (cfg.language == "zh") return "character_count";
  for (const auto& k : knowledge) {
    if (text::contains_cjk(k.text)) return "character_count";
  }
  return "token_count";
}

}  // namespace

const char* storyline_mode_name(StorylineMode m) {
  return m == StorylineMode::generated ? "generated" : "predefined";
}

StorylineMode storyline_mode_from_name(std::string_view name) {
  if (name == "generated") return StorylineMode::generated;
  if (name == "predefined") return StorylineMode::predefined;
  throw InvalidInputError("unknown storyline mode: " + std::string(name));
}

InstructionRecord build_instruction(const core::VideoRecord& video,
                                    const core::KnowledgeBase& knowledge, int clip_index,
                                    StorylineMode mode,
                                    const std::optional<core::Storyline>& storyline,
                                    std::span<const core::Narration> known,
                                    const BuilderConfig& cfg) {
  const std::size_t n = video.clips.size();
  if (clip_index < 1 || static_cast<std::size_t>(clip_index) > n) {
    throw InvalidInputError("build_instruction: clip_index out of range");
  }
  if (mode == StorylineMode::predefined) {
    if (!storyline) {
      throw InvalidInputError("build_instruction: predefined mode requires a storyline");
    }
    if (storyline->size() != n) {
      throw InvalidInputError("build_instruction: storyline length " +
                              std::to_string(storyline->size()) + " != clip count " +
                              std::to_string(n));
    }
  }
  if (known.size() > static_cast<std::size_t>(clip_index)) {
    throw InvalidInputError("build_instruction: more known narrations than clip_index");
  }

  InstructionRecord rec;
  rec.clip_index = clip_index;
  rec.system_text = system_text_for(cfg.domain, cfg.language);
  for (const auto& k : knowledge) rec.knowledge_block.push_back(k.text);

  const std::string unit = resolve_unit_name(cfg, knowledge);
  for (int j = 1; j <= clip_index; ++j) {
    const auto& clip = video.clips[static_cast<std::size_t>(j - 1)];
    SegmentSpec seg;
    seg.clip_id = clip.clip_id;
    seg.position_pct = core::relative_position(clip, video);
    if (clip.frame_ids.empty()) {
      throw InvalidInputError("build_instruction: clip '" + clip.clip_id +
                              "' has no frames");
    }
    seg.visual_placeholder = "{{VIDEO:" + cfg.store_id + ":" + video.video_id + "/" +
                             clip.clip_id + "/0-" +
                             std::to_string(clip.frame_ids.size() - 1) + "}}";
    seg.budget = core::word_budget(clip.duration_s(), cfg.rate, cfg.margin);
    seg.unit_name = unit;
    if (mode == StorylineMode::predefined) {
      seg.requested_label = (*storyline)[static_cast<std::size_t>(j - 1)];
    }
    if (static_cast<std::size_t>(j) <= known.size()) {
      seg.label = known[static_cast<std::size_t>(j - 1)].label;
      seg.narration = known[static_cast<std::size_t>(j - 1)].text;
    }
    rec.segments.push_back(std::move(seg));
  }

  rec.loss_spans.push_back({clip_index, "label"});
  rec.loss_spans.push_back({clip_index, "narration"});
  return rec;
}

std::string serialize_prompt(const InstructionRecord& record) {
  std::ostringstream os;
  os << "[SYSTEM]\n" << record.system_text << "\n";
  os << "[KNOWLEDGE]\n";
  for (std::size_t i = 0; i < record.knowledge_block.size(); ++i) {
    os << (i + 1) << ". " << record.knowledge_block[i] << "\n";
  }
  const std::size_t n_total = record.segments.size();
  for (std::size_t j = 0; j < n_total; ++j) {
    const auto& seg = record.segments[j];
    os << "[CLIP " << (j + 1) << "/" << n_total << "] position=" << seg.position_pct
       << "% visual=" << seg.visual_placeholder << "\n";
    os << control_line(seg) << "\n";
    if (seg.narration) {
      os << "LABEL: "
         << core::script_label_name(seg.label.value_or(core::ScriptLabel::others)) << "\n";
      os << "NARRATION: " << *seg.narration << "\n";
    }
  }
  return os.str();
}

nlohmann::json TrainingSample::to_json() const {
  return nlohmann::json{{"clip_index", clip_index},
                        {"context", context},
                        {"metadata", metadata},
                        {"targets", targets},
                        {"video_id", video_id}};
}

namespace {

nlohmann::json segment_json(const SegmentSpec& seg, bool redact_target) {
  nlohmann::json j;
  j["budget"] = {{"hi", seg.budget.hi}, {"lo", seg.budget.lo}};
  j["clip_id"] = seg.clip_id;
  j["control"] = control_line(seg);
  j["label"] = (!redact_target && seg.label)
                   ? nlohmann::json(core::script_label_name(*seg.label))
                   : nlohmann::json();
  j["narration"] =
      (!redact_target && seg.narration) ? nlohmann::json(*seg.narration) : nlohmann::json();
  j["position_pct"] = seg.position_pct;
  j["requested_label"] = seg.requested_label
                             ? nlohmann::json(core::script_label_name(*seg.requested_label))
                             : nlohmann::json();
  j["unit"] = seg.unit_name;
  j["visual"] = seg.visual_placeholder;
  return j;
}

}  // namespace

CompileResult compile_training_samples(std::span<const VideoSample> videos,
                                       StorylineMode mode, const BuilderConfig& cfg,
                                       const SampleMeta& meta) {
  CompileResult result;
  const nlohmann::json meta_json = {
      {"adapter", {{"alpha", meta.lora_alpha}, {"r", meta.lora_r}, {"type", "lora"}}},
      {"counting_mode", meta.counting_mode},
      {"memory_capacity", meta.memory_capacity},
      {"mode", storyline_mode_name(mode)},
      {"position_encoding", meta.position_encoding},
      {"tau", meta.tau},
      {"toolkit_version", kVersion},
  };

  for (const auto& vs : videos) {
    try {
      const std::size_t n = vs.video.clips.size();
      if (vs.story.narrations.size() != n) {
        throw InvalidInputError("story has " + std::to_string(vs.story.narrations.size()) +
                                " narrations for " + std::to_string(n) + " clips");
      }
      std::optional<core::Storyline> storyline;
      if (mode == StorylineMode::predefined) storyline = vs.storyline;

      for (std::size_t i = 1; i <= n; ++i) {
        const auto known = std::span<const core::Narration>(vs.story.narrations.data(), i);
        const auto rec = build_instruction(vs.video, vs.knowledge, static_cast<int>(i),
                                           mode, storyline, known, cfg);
        TrainingSample sample;
        sample.video_id = vs.video.video_id;
        sample.clip_index = static_cast<int>(i);
        nlohmann::json segs = nlohmann::json::array();
        for (std::size_t j = 0; j < rec.segments.size(); ++j) {
          const bool is_target = (j + 1 == i);
          segs.push_back(segment_json(rec.segments[j], is_target));
        }
        sample.context = {{"knowledge", rec.knowledge_block},
                          {"segments", segs},
                          {"system", rec.system_text}};
        const auto& target = vs.story.narrations[i - 1];
        sample.targets = {{"label", core::script_label_name(target.label)},
                          {"narration", target.text}};
        sample.metadata = meta_json;
        result.samples.push_back(std::move(sample));
      }
    } catch (const Error& e) {
      result.issues.push_back({vs.video.video_id, e.what()});
    }
  }
  return result;
}

std::string to_jsonl(std::span<const TrainingSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    out += s.to_json().dump();
    out += '\n';
  }
  return out;
}

}  // namespace vnkit::instruct
