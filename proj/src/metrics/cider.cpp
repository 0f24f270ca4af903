// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/cider.hpp"

#include <cmath>
#include <set>

#include "vnkit/error.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::metrics {

namespace {

using TfidfVec = std::unordered_map<std::string, double>;

TfidfVec tfidf(const std::vector<std::string>& tokens, int n, const CorpusDf& corpus) {
  TfidfVec vec;
  const double log_docs = static_cast<double>(corpus.num_docs);
  for (const auto& [gram, count] : text::ngram_counts(tokens, n)) {
    int df = 0;
    const auto& table = corpus.df[static_cast<std::size_t>(n - 1)];
    auto it = table.find(gram);
    if (it != table.end()) df = it->second;
    const double idf = std::log(log_docs / static_cast<double>(std::max(1, df)));
    vec[gram] = static_cast<double>(count) * idf;
  }
  return vec;
}

double cosine_sparse(const TfidfVec& a, const TfidfVec& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [gram, w] : a) {
    na += w * w;
    auto it = b.find(gram);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [gram, w] : b) nb += w * w;
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

CorpusDf build_corpus_df(
    const std::vector<std::vector<std::vector<std::string>>>& documents, int max_n) {
  if (max_n < 1) throw InvalidInputError("build_corpus_df: max_n must be >= 1");
  CorpusDf corpus;
  corpus.num_docs = documents.size();
  corpus.df.resize(static_cast<std::size_t>(max_n));
  for (const auto& doc : documents) {
    for (int n = 1; n <= max_n; ++n) {
      std::set<std::string> grams;
      for (const auto& ref : doc) {
        for (const auto& [gram, _] : text::ngram_counts(ref, n)) grams.insert(gram);
      }
      for (const auto& gram : grams) ++corpus.df[static_cast<std::size_t>(n - 1)][gram];
    }
  }
  return corpus;
}

double cider(const std::vector<std::string>& candidate,
             const std::vector<std::vector<std::string>>& references, const CorpusDf& df,
             int max_n) {
  if (df.num_docs == 0) throw InvalidInputError("cider: empty corpus statistics");
  if (references.empty()) throw InvalidInputError("cider: no references");
  if (max_n < 1 || max_n > df.max_n()) {
    throw InvalidInputError("cider: max_n outside corpus statistics range");
  }

  double order_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand_vec = tfidf(candidate, n, df);
    double ref_sum = 0.0;
    for (const auto& ref : references) {
      ref_sum += cosine_sparse(cand_vec, tfidf(ref, n, df));
    }
    order_sum += ref_sum / static_cast<double>(references.size());
  }
  return 10.0 * order_sum / static_cast<double>(max_n);
}

}  // namespace vnkit::metrics
