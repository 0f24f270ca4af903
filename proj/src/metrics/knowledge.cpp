// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/knowledge.hpp"

#include <algorithm>

#include "vnkit/error.hpp"

namespace vnkit::metrics {

namespace {

std::vector<embed::EmbeddingVector> knowledge_embeddings(
    const core::KnowledgeBase& knowledge, const embed::EmbeddingProvider& provider) {
  std::vector<embed::EmbeddingVector> out;
  out.reserve(knowledge.size());
  for (const auto& k : knowledge) out.push_back(provider.get(k.text));
  return out;
}

double best_cosine(const embed::EmbeddingVector& v,
                   const std::vector<embed::EmbeddingVector>& pool) {
  double best = -2.0;
  for (const auto& p : pool) best = std::max(best, embed::cosine(p, v));
  return best;
}

}  // namespace

double info_sim(const core::Story& story, const core::KnowledgeBase& knowledge,
                const embed::EmbeddingProvider& text_provider,
                const text::PosTagger& tagger) {
  if (knowledge.empty()) throw InvalidInputError("info_sim: empty knowledge base");
  if (story.narrations.empty()) throw InvalidInputError("info_sim: empty story");

  const auto kvecs = knowledge_embeddings(knowledge, text_provider);

  double total = 0.0;
  for (const auto& narration : story.narrations) {
    const double coarse = best_cosine(text_provider.get(narration.text), kvecs);
    const auto ts = text::tokenize(narration.text, tagger);
    if (ts.tokens.empty()) {
      total += coarse;
      continue;
    }
    double fine = 0.0;
    for (const auto& tok : ts.tokens) {
      fine += best_cosine(text_provider.get(tok.surface), kvecs);
    }
    fine /= static_cast<double>(ts.tokens.size());
    total += 0.5 * (coarse + fine);
  }
  return total / static_cast<double>(story.narrations.size());
}

double info_diverse(const core::Story& story, const core::KnowledgeBase& knowledge,
                    double duration_s, const embed::EmbeddingProvider& text_provider,
                    const text::PosTagger& tagger, double threshold) {
  if (!(duration_s > 0.0)) {
    throw InvalidInputError("info_diverse: duration must be positive");
  }
  if (knowledge.empty()) throw InvalidInputError("info_diverse: empty knowledge base");

  const auto kvecs = knowledge_embeddings(knowledge, text_provider);
  std::vector<bool> covered(knowledge.size(), false);

  for (const auto& narration : story.narrations) {
    std::vector<embed::EmbeddingVector> probes;
    probes.push_back(text_provider.get(narration.text));
    for (const auto& tok : text::tokenize(narration.text, tagger).tokens) {
      probes.push_back(text_provider.get(tok.surface));
    }
    for (std::size_t k = 0; k < kvecs.size(); ++k) {
      if (covered[k]) continue;
      for (const auto& probe : probes) {
        if (embed::cosine(kvecs[k], probe) > threshold) {
          covered[k] = true;
          break;
        }
      }
    }
  }

  const auto count = static_cast<double>(std::count(covered.begin(), covered.end(), true));
  return count / duration_s;
}

}  // namespace vnkit::metrics
