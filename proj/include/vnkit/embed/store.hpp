// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vnkit/embed/embedding.hpp"

namespace vnkit::embed {

/// In-memory embedding table with a little-endian binary file format:
///
///   magic "EMBS" | version u32=1 | dimension u32 | entry count u32
///   per entry: key length u16 | UTF-8 key bytes | dim * f32
///
/// Raw vectors round-trip bit-exactly through save/load; normalized views are
/// computed on load and used by everything downstream.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::uint32_t dim) : dim_(dim) {}

  static EmbeddingStore load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Inserts or replaces. Throws InvalidInputError on dimension mismatch.
  void put(const std::string& key, std::vector<float> raw);

  bool contains(const std::string& key) const { return entries_.count(key) > 0; }
  std::size_t size() const { return entries_.size(); }
  std::uint32_t dim() const { return dim_; }

  /// Normalized vector; throws MissingEmbeddingError for unknown keys.
  const EmbeddingVector& get(const std::string& key) const;

  /// Raw vector as inserted/loaded (bit-exact).
  const std::vector<float>& get_raw(const std::string& key) const;

  /// Keys starting with `prefix`, in lexicographic order.
  std::vector<std::string> keys_with_prefix(std::string_view prefix) const;

  std::vector<std::string> keys() const;

 private:
  struct Entry {
    std::vector<float> raw;
    EmbeddingVector unit;
  };

  std::uint32_t dim_ = 0;
  std::map<std::string, Entry> entries_;
};

}  // namespace vnkit::embed
