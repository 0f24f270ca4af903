// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/evaluate.hpp"

#include <cmath>
#include <sstream>

#include "vnkit/error.hpp"

namespace vnkit::metrics {

nlohmann::json MetricReport::to_json() const {
  nlohmann::json j;
  j["emscore"] = emscore;
  j["emscore_ref"] = emscore_ref ? nlohmann::json(*emscore_ref) : nlohmann::json();
  j["info_sim"] = info_sim;
  j["info_diverse"] = info_diverse;
  j["length_accuracy"] = length_accuracy;
  j["label_accuracy"] = label_accuracy ? nlohmann::json(*label_accuracy) : nlohmann::json();
  j["intra_repetition"] = intra_repetition;
  if (bleu) {
    nlohmann::json b;
    for (const auto& [n, v] : *bleu) b[std::to_string(n)] = v;
    j["bleu"] = b;
  } else {
    j["bleu"] = nlohmann::json();
  }
  j["cider"] = cider ? nlohmann::json(*cider) : nlohmann::json();
  return j;
}

nlohmann::json EvalConfig::metadata() const {
  return nlohmann::json{
      {"coarse_pooling", pooling == CoarsePooling::per_clip ? "per_clip" : "whole_video"},
      {"diverse_threshold", diverse_threshold},
      {"emscore_combination", "mean_of_coarse_and_fine_f1"},
      {"info_sim_normalization", "mean_over_sentences_of_half_sum"},
      {"intra_window", intra_window},
      {"max_n", max_n},
  };
}

std::vector<std::string> story_tokens(const core::Story& story) {
  std::vector<std::string> out;
  for (const auto& n : story.narrations) {
    auto toks = text::split_surfaces(n.text);
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

MetricReport evaluate(const core::Story& story, const core::VideoRecord& video,
                      const core::KnowledgeBase& knowledge,
                      const std::optional<core::Story>& reference,
                      const ClipFrameEmbeddings& clip_frames,
                      const embed::EmbeddingProvider& text_provider,
                      const text::PosTagger& tagger, const EvalConfig& cfg,
                      const CorpusDf* corpus_df,
                      const std::optional<core::Storyline>& requested) {
  MetricReport report;
  report.emscore = emscore(story, clip_frames, text_provider, tagger, cfg.pooling);
  report.info_sim = info_sim(story, knowledge, text_provider, tagger);
  report.info_diverse = info_diverse(story, knowledge, video.total_duration_s,
                                     text_provider, tagger, cfg.diverse_threshold);
  report.length_accuracy = length_accuracy(story);
  report.intra_repetition = intra_repetition(story, tagger, cfg.intra_window);
  if (requested) {
    report.label_accuracy = label_match_accuracy(story, *requested);
  }
  if (reference) {
    report.emscore_ref =
        emscore_ref(story, clip_frames, *reference, text_provider, tagger, cfg.pooling);
    const auto cand_tokens = story_tokens(story);
    const auto ref_tokens = story_tokens(*reference);
    report.bleu = bleu(cand_tokens, {ref_tokens}, cfg.max_n);
    if (corpus_df != nullptr) {
      report.cider = cider(cand_tokens, {ref_tokens}, *corpus_df, cfg.max_n);
    }
  }
  return report;
}

nlohmann::json aggregate_reports(const std::vector<MetricReport>& reports) {
  if (reports.empty()) throw InvalidInputError("aggregate_reports: no reports");

  auto mean_of = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };

  nlohmann::json agg;
  agg["num_videos"] = reports.size();
  std::vector<double> v;
  auto collect = [&](auto getter) {
    v.clear();
    for (const auto& r : reports) {
      if (auto x = getter(r)) v.push_back(*x);
    }
  };

  collect([](const MetricReport& r) { return std::optional<double>(r.emscore); });
  agg["emscore"] = mean_of(v);
  collect([](const MetricReport& r) { return r.emscore_ref; });
  agg["emscore_ref"] = v.empty() ? nlohmann::json() : nlohmann::json(mean_of(v));
  collect([](const MetricReport& r) { return std::optional<double>(r.info_sim); });
  agg["info_sim"] = mean_of(v);
  collect([](const MetricReport& r) { return std::optional<double>(r.info_diverse); });
  agg["info_diverse"] = mean_of(v);
  collect([](const MetricReport& r) { return std::optional<double>(r.length_accuracy); });
  agg["length_accuracy"] = mean_of(v);
  collect([](const MetricReport& r) { return r.label_accuracy; });
  agg["label_accuracy"] = v.empty() ? nlohmann::json() : nlohmann::json(mean_of(v));
  collect([](const MetricReport& r) { return std::optional<double>(r.intra_repetition); });
  agg["intra_repetition"] = mean_of(v);
  collect([](const MetricReport& r) { return r.cider; });
  agg["cider"] = v.empty() ? nlohmann::json() : nlohmann::json(mean_of(v));

  nlohmann::json bleu_agg;
  for (int n = 1; n <= 4; ++n) {
    v.clear();
    for (const auto& r : reports) {
      if (r.bleu && r.bleu->count(n)) v.push_back(r.bleu->at(n));
    }
    if (!v.empty()) bleu_agg[std::to_string(n)] = mean_of(v);
  }
  agg["bleu"] = bleu_agg.is_null() ? nlohmann::json() : bleu_agg;
  return agg;
}

std::string render_report_table(const nlohmann::json& report) {
  std::ostringstream os;
  os << "metric                value\n";
  os << "--------------------  ----------\n";
  auto row = [&](const std::string& name, const nlohmann::json& v) {
    os << name;
    for (std::size_t i = name.size(); i < 22; ++i) os << ' ';
    if (v.is_null()) {
      os << "-\n";
    } else if (v.is_number()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", v.get<double>());
      os << buf << "\n";
    } else {
      os << v.dump() << "\n";
    }
  };
  static const char* scalar_keys[] = {"emscore",         "emscore_ref",
                                      "info_sim",        "info_diverse",
                                      "length_accuracy", "label_accuracy",
                                      "intra_repetition", "cider"};
  for (const char* key : scalar_keys) {
    if (report.contains(key)) row(key, report[key]);
  }
  if (report.contains("bleu") && !report["bleu"].is_null()) {
    for (const auto& [n, val] : report["bleu"].items()) row("bleu-" + n, val);
  }
  return os.str();
}

}  // namespace vnkit::metrics
