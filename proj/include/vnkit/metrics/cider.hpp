// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace vnkit::metrics {

/// Corpus n-gram document frequencies for CIDEr. A document is one video's
/// reference set; an n-gram counts once per document containing it.
struct CorpusDf {
  std::size_t num_docs = 0;
  std::vector<std::unordered_map<std::string, int>> df;  // index n-1

  int max_n() const { return static_cast<int>(df.size()); }
};

CorpusDf build_corpus_df(
    const std::vector<std::vector<std::vector<std::string>>>& documents, int max_n = 4);

/// Consensus score: for each order n, cosine similarity between TF-IDF
/// weighted n-gram vectors of candidate and reference (TF = raw count,
/// IDF = ln(num_docs / max(1, df))), averaged over references, then averaged
/// over orders and scaled by 10. Zero vectors score 0 at that order.
double cider(const std::vector<std::string>& candidate,
             const std::vector<std::vector<std::string>>& references, const CorpusDf& df,
             int max_n = 4);

}  // namespace vnkit::metrics
