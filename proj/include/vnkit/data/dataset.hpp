// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vnkit/core/types.hpp"
#include "vnkit/embed/store.hpp"
#include "vnkit/instruct/builder.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::data {

struct DatasetClip {
  std::string clip_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string narration;
  core::ScriptLabel script_label = core::ScriptLabel::others;
};

struct DatasetRecord {
  std::string video_id;
  std::optional<std::string> industry;
  std::vector<std::string> knowledge;
  std::vector<DatasetClip> clips;
};

struct LoadIssue {
  std::size_t line_no = 0;  // 1-based
  std::string message;
};

struct LoadResult {
  std::vector<DatasetRecord> records;
  std::vector<LoadIssue> issues;
};

/// Reads and validates dataset JSONL. Invalid lines are reported with their
/// line number and skipped; an unreadable file throws IoError. Validation:
/// non-empty ids/narrations, labels within the taxonomy, clips ordered and
/// non-overlapping with end > start.
LoadResult load_dataset(const std::filesystem::path& path);

nlohmann::json record_to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const nlohmann::json& j);

void save_dataset(std::span<const DatasetRecord> records,
                  const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Corpus statistics
// ---------------------------------------------------------------------------

inline constexpr int kDurationBins = 31;  // [0,1) .. [29,30), then 30+

struct CorpusStats {
  std::size_t num_videos = 0;
  std::size_t num_clips = 0;
  double avg_clips_per_video = 0.0;
  double avg_text_len_per_video = 0.0;
  double avg_text_len_per_second = 0.0;
  std::map<std::string, std::size_t> label_histogram;   // all 12 bins present
  std::vector<std::size_t> clip_duration_histogram;     // kDurationBins entries
  std::string counting_mode;

  nlohmann::json to_json() const;
};

CorpusStats compute_stats(std::span<const DatasetRecord> records,
                          const text::CountingConfig& counting);

/// Deterministic seeded partition by video: shuffle video ids, take
/// round(train_fraction * N) for the train side. Disjoint and exhaustive.
std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split_dataset(
    std::span<const DatasetRecord> records, double train_fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Conversions into the core model
// ---------------------------------------------------------------------------

/// Builds the VideoRecord. With a frame store, frame ids come from keys
/// "{video_id}/{clip_id}/{idx}" sorted numerically by idx; without one, a
/// nominal frame id per whole second of clip duration (at least one) is
/// synthesized so instruction building stays deterministic.
core::VideoRecord to_video_record(const DatasetRecord& record,
                                  const embed::EmbeddingStore* frames = nullptr);

/// Story with budgets derived from clip durations and unit counts from the
/// counting config.
core::Story to_story(const DatasetRecord& record, const text::CountingConfig& counting,
                     double rate = 5.0, int margin = 3);

core::Storyline to_storyline(const DatasetRecord& record);

core::KnowledgeBase to_knowledge(const DatasetRecord& record);

instruct::VideoSample to_video_sample(const DatasetRecord& record,
                                      const text::CountingConfig& counting,
                                      const embed::EmbeddingStore* frames = nullptr,
                                      double rate = 5.0, int margin = 3);

}  // namespace vnkit::data
