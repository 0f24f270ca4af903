// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/story_metrics.hpp"

#include <set>
#include <string>
#include <vector>

#include "vnkit/error.hpp"

namespace vnkit::metrics {

double length_accuracy(const core::Story& story) {
  if (story.narrations.empty()) return 0.0;
  std::size_t within = 0;
  for (const auto& n : story.narrations) {
    if (n.budget.contains(n.unit_count)) ++within;
  }
  return static_cast<double>(within) / static_cast<double>(story.narrations.size());
}

double label_match_accuracy(const core::Story& story, const core::Storyline& requested) {
  if (story.narrations.size() != requested.size()) {
    throw InvalidInputError("label_match_accuracy: storyline length " +
                            std::to_string(requested.size()) + " != story length " +
                            std::to_string(story.narrations.size()));
  }
  if (requested.empty()) return 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < requested.size(); ++i) {
    if (story.narrations[i].label == requested[i]) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(requested.size());
}

double intra_repetition(const core::Story& story, const text::PosTagger& tagger,
                        int window) {
  const std::size_t n = story.narrations.size();
  if (n == 0) throw InvalidInputError("intra_repetition: empty story");
  if (n == 1) return 0.0;

  std::vector<std::set<std::string>> token_sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& tok : text::tokenize(story.narrations[i].text, tagger).tokens) {
      token_sets[i].insert(tok.surface);
    }
  }

  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t first =
        (window > 0 && static_cast<std::size_t>(window) < i) ? i - window : 0;
    std::set<std::string> seen;
    for (std::size_t j = first; j < i; ++j) {
      seen.insert(token_sets[j].begin(), token_sets[j].end());
    }
    if (token_sets[i].empty()) continue;  // contributes 0
    std::size_t overlap = 0;
    for (const auto& t : token_sets[i]) {
      if (seen.count(t)) ++overlap;
    }
    total += static_cast<double>(overlap) / static_cast<double>(token_sets[i].size());
  }
  return 100.0 * total / static_cast<double>(n - 1);
}

}  // namespace vnkit::metrics
