// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/emscore.hpp"

#include <cmath>

#include "vnkit/error.hpp"
#include "vnkit/simd/kernels.hpp"

namespace vnkit::metrics {

namespace {

std::vector<double> pool_frames(const std::vector<embed::EmbeddingVector>& frames) {
  if (frames.empty()) return {};
  std::vector<double> acc(frames[0].dim(), 0.0);
  for (const auto& f : frames) simd::axpy(acc.data(), f.data(), 1.0, acc.size());
  double sq = 0.0;
  for (double v : acc) sq += v * v;
  if (sq > 1e-24) {
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : acc) v *= inv;
  }
  return acc;
}

double dot_fd(const std::vector<double>& a, const embed::EmbeddingVector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += a[i] * static_cast<double>(b.values[i]);
  }
  return acc;
}

/// F1 of best-match cosines between two embedding sets (precision over a,
/// recall over b). Returns 0 when P+R vanishes.
double match_f1(const std::vector<embed::EmbeddingVector>& a,
                const std::vector<embed::EmbeddingVector>& b) {
  double precision = 0.0;
  for (const auto& x : a) {
    double best = -2.0;
    for (const auto& y : b) best = std::max(best, embed::cosine(x, y));
    precision += best;
  }
  precision /= static_cast<double>(a.size());

  double recall = 0.0;
  for (const auto& y : b) {
    double best = -2.0;
    for (const auto& x : a) best = std::max(best, embed::cosine(x, y));
    recall += best;
  }
  recall /= static_cast<double>(b.size());

  const double denom = precision + recall;
  if (std::abs(denom) < 1e-300) return 0.0;
  return 2.0 * precision * recall / denom;
}

std::vector<embed::EmbeddingVector> word_embeddings(
    const std::vector<std::string>& words, const embed::EmbeddingProvider& provider) {
  std::vector<embed::EmbeddingVector> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(provider.get(w));
  return out;
}

}  // namespace

double emscore(const core::Story& story, const ClipFrameEmbeddings& clip_frames,
               const embed::EmbeddingProvider& text_provider,
               const text::PosTagger& tagger, CoarsePooling pooling) {
  const std::size_t n = story.narrations.size();
  if (n == 0) throw InvalidInputError("emscore: story has no narrations");
  if (clip_frames.size() != n) {
    throw InvalidInputError("emscore: clip count mismatch (" +
                            std::to_string(clip_frames.size()) + " frame groups vs " +
                            std::to_string(n) + " narrations)");
  }

  std::vector<double> video_pool;
  if (pooling == CoarsePooling::whole_video) {
    std::vector<embed::EmbeddingVector> all;
    for (const auto& group : clip_frames) all.insert(all.end(), group.begin(), group.end());
    if (all.empty()) throw InvalidInputError("emscore: video has no frames");
    video_pool = pool_frames(all);
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& frames = clip_frames[i];
    if (frames.empty()) {
      throw InvalidInputError("emscore: clip " + std::to_string(i + 1) + " has no frames");
    }
    const auto sentence = text_provider.get(story.narrations[i].text);
    const auto pooled =
        pooling == CoarsePooling::per_clip ? pool_frames(frames) : video_pool;
    const double coarse = dot_fd(pooled, sentence);

    const auto ts = text::tokenize(story.narrations[i].text, tagger);
    const auto words = text::visually_relevant_words(ts);
    if (words.empty()) {
      total += coarse;  // no relevant words: coarse term alone
      continue;
    }
    const double fine = match_f1(word_embeddings(words, text_provider), frames);
    total += 0.5 * (coarse + fine);
  }
  return total / static_cast<double>(n);
}

double emscore_ref(const core::Story& story, const ClipFrameEmbeddings& clip_frames,
                   const core::Story& reference,
                   const embed::EmbeddingProvider& text_provider,
                   const text::PosTagger& tagger, CoarsePooling pooling) {
  const std::size_t n = story.narrations.size();
  if (reference.narrations.size() != n) {
    throw InvalidInputError("emscore_ref: reference clip count mismatch (" +
                            std::to_string(reference.narrations.size()) + " vs " +
                            std::to_string(n) + ")");
  }
  const double visual = emscore(story, clip_frames, text_provider, tagger, pooling);

  double text_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cand_sentence = text_provider.get(story.narrations[i].text);
    const auto ref_sentence = text_provider.get(reference.narrations[i].text);
    const double coarse = embed::cosine(ref_sentence, cand_sentence);

    const auto cand_words = text::visually_relevant_words(
        text::tokenize(story.narrations[i].text, tagger));
    const auto ref_words = text::visually_relevant_words(
        text::tokenize(reference.narrations[i].text, tagger));
    if (cand_words.empty() || ref_words.empty()) {
      text_total += coarse;
      continue;
    }
    const double fine = match_f1(word_embeddings(cand_words, text_provider),
                                 word_embeddings(ref_words, text_provider));
    text_total += 0.5 * (coarse + fine);
  }
  const double text_score = text_total / static_cast<double>(n);
  return 0.5 * (visual + text_score);
}

}  // namespace vnkit::metrics
