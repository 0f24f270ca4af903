// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Keyed hashing and a small counter-based generator. Used wherever outputs
// must be identical across runs and platforms (mock embeddings, position
// table init, dataset splits, prompt hashes); the standard <random>
// distributions are not reproducible across library implementations.

namespace vnkit::util {

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n). Modulo bias is irrelevant at the scales used here.
  std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

std::string hex64(std::uint64_t v);

}  // namespace vnkit::util
