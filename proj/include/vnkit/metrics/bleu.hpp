// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace vnkit::metrics {

/// Cumulative BLEU-n for n = 1..max_n: clipped n-gram precision, geometric
/// mean over orders, brevity penalty against the closest reference length
/// (ties to the shorter). No smoothing: a zero precision at any order zeroes
/// that cumulative score. Throws InvalidInputError on an empty candidate or
/// empty reference list.
std::map<int, double> bleu(const std::vector<std::string>& candidate,
                           const std::vector<std::vector<std::string>>& references,
                           int max_n = 4);

}  // namespace vnkit::metrics
