// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vnkit/core/types.hpp"
#include "vnkit/metrics/bleu.hpp"
#include "vnkit/metrics/cider.hpp"
#include "vnkit/metrics/emscore.hpp"
#include "vnkit/metrics/knowledge.hpp"
#include "vnkit/metrics/story_metrics.hpp"

namespace vnkit::metrics {

/// Every metric for one (video, story, knowledge) triple. Reference-based
/// fields stay empty (not zero) when no reference is supplied.
struct MetricReport {
  double emscore = 0.0;
  std::optional<double> emscore_ref;
  double info_sim = 0.0;
  double info_diverse = 0.0;
  double length_accuracy = 0.0;
  std::optional<double> label_accuracy;
  double intra_repetition = 0.0;
  std::optional<std::map<int, double>> bleu;
  std::optional<double> cider;

  nlohmann::json to_json() const;
};

struct EvalConfig {
  CoarsePooling pooling = CoarsePooling::per_clip;
  double diverse_threshold = 0.9;
  int intra_window = 0;  // 0 = all preceding sentences
  int max_n = 4;

  /// Formula choices echoed into report metadata.
  nlohmann::json metadata() const;
};

/// Runs the applicable metrics. `reference` enables emscore_ref/bleu/cider
/// (cider additionally needs corpus stats); `requested` enables
/// label_accuracy. Tokens for bleu/cider are the concatenated surfaces of all
/// narrations.
MetricReport evaluate(const core::Story& story, const core::VideoRecord& video,
                      const core::KnowledgeBase& knowledge,
                      const std::optional<core::Story>& reference,
                      const ClipFrameEmbeddings& clip_frames,
                      const embed::EmbeddingProvider& text_provider,
                      const text::PosTagger& tagger, const EvalConfig& cfg,
                      const CorpusDf* corpus_df = nullptr,
                      const std::optional<core::Storyline>& requested = std::nullopt);

/// Tokenized concatenation of a story's narrations (bleu/cider candidate).
std::vector<std::string> story_tokens(const core::Story& story);

/// Per-metric means over a set of reports; optional fields average over the
/// reports that carry them.
nlohmann::json aggregate_reports(const std::vector<MetricReport>& reports);

/// Plain-text table for one report or an aggregate JSON object.
std::string render_report_table(const nlohmann::json& report);

}  // namespace vnkit::metrics
