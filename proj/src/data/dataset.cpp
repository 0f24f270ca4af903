// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vnkit/core/rules.hpp"
#include "vnkit/error.hpp"
#include "vnkit/util/rng.hpp"

namespace vnkit::data {

namespace {

void validate_record(const DatasetRecord& r) {
  if (r.video_id.empty()) throw InvalidInputError("record missing video_id");
  if (r.clips.empty()) throw InvalidInputError("record has no clips");
  double prev_end = 0.0;
  for (std::size_t i = 0; i < r.clips.size(); ++i) {
    const auto& c = r.clips[i];
    if (c.clip_id.empty()) throw InvalidInputError("clip missing clip_id");
    if (c.start_s < 0.0) throw InvalidInputError("clip '" + c.clip_id + "' starts before 0");
    if (!(c.end_s > c.start_s)) {
      throw InvalidInputError("clip '" + c.clip_id + "' must have end_s > start_s");
    }
    if (i > 0 && c.start_s < prev_end - 1e-9) {
      throw InvalidInputError("clip '" + c.clip_id + "' overlaps its predecessor");
    }
    if (c.narration.empty()) {
      throw InvalidInputError("clip '" + c.clip_id + "' has empty narration");
    }
    prev_end = c.end_s;
  }
}

}  // namespace

nlohmann::json record_to_json(const DatasetRecord& record) {
  nlohmann::json clips = nlohmann::json::array();
  for (const auto& c : record.clips) {
    clips.push_back({{"clip_id", c.clip_id},
                     {"start_s", c.start_s},
                     {"end_s", c.end_s},
                     {"narration", c.narration},
                     {"script_label", core::script_label_name(c.script_label)}});
  }
  nlohmann::json j = {{"video_id", record.video_id},
                      {"industry", record.industry ? nlohmann::json(*record.industry)
                                                   : nlohmann::json()},
                      {"knowledge", record.knowledge},
                      {"clips", clips}};
  return j;
}

DatasetRecord record_from_json(const nlohmann::json& j) {
  DatasetRecord r;
  r.video_id = j.at("video_id").get<std::string>();
  if (j.contains("industry") && !j["industry"].is_null()) {
    r.industry = j["industry"].get<std::string>();
  }
  if (j.contains("knowledge")) r.knowledge = j["knowledge"].get<std::vector<std::string>>();
  for (const auto& cj : j.at("clips")) {
    DatasetClip c;
    c.clip_id = cj.at("clip_id").get<std::string>();
    c.start_s = cj.at("start_s").get<double>();
    c.end_s = cj.at("end_s").get<double>();
    c.narration = cj.at("narration").get<std::string>();
    const auto label_name = cj.at("script_label").get<std::string>();
    const auto label = core::script_label_from_name(label_name);
    if (!label) throw InvalidInputError("unknown script_label '" + label_name + "'");
    c.script_label = *label;
    r.clips.push_back(std::move(c));
  }
  validate_record(r);
  return r;
}

LoadResult load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path.string());

  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      result.records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      result.issues.push_back({line_no, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      result.issues.push_back({line_no, e.what()});
    }
  }
  return result;
}

void save_dataset(std::span<const DatasetRecord> records,
                  const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write dataset: " + path.string());
  for (const auto& r : records) {
    os << record_to_json(r).dump() << "\n";
  }
}

nlohmann::json CorpusStats::to_json() const {
  return nlohmann::json{{"num_videos", num_videos},
                        {"num_clips", num_clips},
                        {"avg_clips_per_video", avg_clips_per_video},
                        {"avg_text_len_per_video", avg_text_len_per_video},
                        {"avg_text_len_per_second", avg_text_len_per_second},
                        {"label_histogram", label_histogram},
                        {"clip_duration_histogram", clip_duration_histogram},
                        {"counting_mode", counting_mode}};
}

CorpusStats compute_stats(std::span<const DatasetRecord> records,
                          const text::CountingConfig& counting) {
  if (records.empty()) throw InvalidInputError("compute_stats: no records");

  CorpusStats stats;
  stats.counting_mode = counting.name();
  stats.clip_duration_histogram.assign(kDurationBins, 0);
  for (auto label : core::all_script_labels()) {
    stats.label_histogram[core::script_label_name(label)] = 0;
  }

  stats.num_videos = records.size();
  long long total_units = 0;
  double total_seconds = 0.0;
  for (const auto& r : records) {
    stats.num_clips += r.clips.size();
    total_seconds += r.clips.back().end_s;
    for (const auto& c : r.clips) {
      total_units += text::count_units(c.narration, counting);
      ++stats.label_histogram[core::script_label_name(c.script_label)];
      const double d = c.end_s - c.start_s;
      int bin = static_cast<int>(std::floor(d));
      bin = std::clamp(bin, 0, kDurationBins - 1);
      ++stats.clip_duration_histogram[static_cast<std::size_t>(bin)];
    }
  }
  stats.avg_clips_per_video =
      static_cast<double>(stats.num_clips) / static_cast<double>(stats.num_videos);
  stats.avg_text_len_per_video =
      static_cast<double>(total_units) / static_cast<double>(stats.num_videos);
  stats.avg_text_len_per_second = static_cast<double>(total_units) / total_seconds;
  return stats;
}

std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split_dataset(
    std::span<const DatasetRecord> records, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw InvalidInputError("split_dataset: train_fraction must be in (0, 1)");
  }
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Fisher-Yates with the portable generator; std::shuffle is not
  // reproducible across standard libraries.
  util::SplitMix64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(order[i - 1], order[j]);
  }

  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(records.size())));
  std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? out.first : out.second).push_back(records[order[i]]);
  }
  return out;
}

core::VideoRecord to_video_record(const DatasetRecord& record,
                                  const embed::EmbeddingStore* frames) {
  core::VideoRecord v;
  v.video_id = record.video_id;
  for (const auto& c : record.clips) {
    core::ClipSpec clip;
    clip.clip_id = c.clip_id;
    clip.start_s = c.start_s;
    clip.end_s = c.end_s;
    if (frames != nullptr) {
      const std::string prefix = record.video_id + "/" + c.clip_id + "/";
      auto keys = frames->keys_with_prefix(prefix);
      // Numeric order of the trailing frame index, not lexicographic.
      std::sort(keys.begin(), keys.end(), [&](const std::string& a, const std::string& b) {
        const long ia = std::strtol(a.c_str() + prefix.size(), nullptr, 10);
        const long ib = std::strtol(b.c_str() + prefix.size(), nullptr, 10);
        return ia < ib;
      });
      clip.frame_ids = std::move(keys);
      if (clip.frame_ids.empty()) {
        throw MissingEmbeddingError(prefix + "0");
      }
    } else {
      const auto nominal = std::max<long long>(1, std::llround(c.end_s - c.start_s));
      for (long long i = 0; i < nominal; ++i) {
        clip.frame_ids.push_back(record.video_id + "/" + c.clip_id + "/" +
                                 std::to_string(i));
      }
    }
    v.clips.push_back(std::move(clip));
  }
  v.total_duration_s = record.clips.back().end_s;
  return v;
}

core::Story to_story(const DatasetRecord& record, const text::CountingConfig& counting,
                     double rate, int margin) {
  core::Story story;
  for (const auto& c : record.clips) {
    core::Narration n;
    n.text = c.narration;
    n.label = c.script_label;
    n.budget = core::word_budget(c.end_s - c.start_s, rate, margin);
    n.unit_count = text::count_units(c.narration, counting);
    story.narrations.push_back(std::move(n));
  }
  return story;
}

core::Storyline to_storyline(const DatasetRecord& record) {
  core::Storyline line;
  for (const auto& c : record.clips) line.push_back(c.script_label);
  return line;
}

core::KnowledgeBase to_knowledge(const DatasetRecord& record) {
  core::KnowledgeBase kb;
  for (std::size_t i = 0; i < record.knowledge.size(); ++i) {
    kb.push_back({"k" + std::to_string(i + 1), record.knowledge[i]});
  }
  return kb;
}

instruct::VideoSample to_video_sample(const DatasetRecord& record,
                                      const text::CountingConfig& counting,
                                      const embed::EmbeddingStore* frames, double rate,
                                      int margin) {
  instruct::VideoSample vs;
  vs.video = to_video_record(record, frames);
  vs.knowledge = to_knowledge(record);
  vs.story = to_story(record, counting, rate, margin);
  vs.storyline = to_storyline(record);
  return vs;
}

}  // namespace vnkit::data
