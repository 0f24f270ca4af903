// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/metrics/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "vnkit/error.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::metrics {

std::map<int, double> bleu(const std::vector<std::string>& candidate,
                           const std::vector<std::vector<std::string>>& references,
                           int max_n) {
  if (candidate.empty()) throw InvalidInputError("bleu: empty candidate");
  if (references.empty()) throw InvalidInputError("bleu: no references");
  if (max_n < 1) throw InvalidInputError("bleu: max_n must be >= 1");

  // Closest reference length; ties take the shorter.
  const auto c = static_cast<long long>(candidate.size());
  long long r = static_cast<long long>(references[0].size());
  for (const auto& ref : references) {
    const auto len = static_cast<long long>(ref.size());
    const long long d_new = std::llabs(len - c);
    const long long d_old = std::llabs(r - c);
    if (d_new < d_old || (d_new == d_old && len < r)) r = len;
  }
  const double bp = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c);

  std::vector<double> precisions;  // p_1 .. p_max_n
  for (int n = 1; n <= max_n; ++n) {
    const auto cand_counts = text::ngram_counts(candidate, n);
    std::unordered_map<std::string, int> max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : text::ngram_counts(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    long long clipped = 0;
    long long total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(count, it->second);
    }
    precisions.push_back(total > 0 ? static_cast<double>(clipped) / total : 0.0);
  }

  std::map<int, double> out;
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 1; n <= max_n; ++n) {
    const double p = precisions[static_cast<std::size_t>(n - 1)];
    if (p <= 0.0) zero = true;
    if (!zero) log_sum += std::log(p);
    out[n] = zero ? 0.0 : bp * std::exp(log_sum / n);
  }
  return out;
}

}  // namespace vnkit::metrics
