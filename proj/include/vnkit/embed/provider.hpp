// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vnkit/embed/embedding.hpp"
#include "vnkit/embed/store.hpp"

namespace vnkit::embed {

/// Uniform, thread-safe access to normalized embeddings, decoupled from any
/// specific encoder. Three backends: offline file store, HTTP batch service,
/// and a deterministic keyed-hash mock for tests.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::uint32_t dim() const = 0;

  /// Normalized vector for the key; throws MissingEmbeddingError when the
  /// backend cannot resolve it. Deterministic per key and backend.
  virtual EmbeddingVector get(const std::string& key) const = 0;

  /// Batch fetch; the default just loops over get().
  virtual std::vector<EmbeddingVector> get_many(std::span<const std::string> keys) const;
};

class StoreProvider : public EmbeddingProvider {
 public:
  explicit StoreProvider(EmbeddingStore store) : store_(std::move(store)) {}

  std::uint32_t dim() const override { return store_.dim(); }
  EmbeddingVector get(const std::string& key) const override { return store_.get(key); }

  const EmbeddingStore& store() const { return store_; }

 private:
  EmbeddingStore store_;
};

/// Derives a vector from a keyed hash expanded to `dim` values, then
/// normalizes in double precision. Identical across runs and platforms for
/// the same (key, seed, dim).
class HashEmbeddingProvider : public EmbeddingProvider {
 public:
  HashEmbeddingProvider(std::uint32_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {}

  std::uint32_t dim() const override { return dim_; }
  EmbeddingVector get(const std::string& key) const override;

 private:
  std::uint32_t dim_;
  std::uint64_t seed_;
};

/// Client for the embedding service contract:
///   POST {endpoint}/embed  {"keys": [...], "kind": "text"|"frame"}
///   -> {"dim": D, "vectors": {key: [floats...]}}
/// Results are cached; network access is serialized internally.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  /// `endpoint` like "http://host:port"; empty `auth_token` sends no
  /// Authorization header. `kind` must be "text" or "frame".
  HttpEmbeddingProvider(std::string endpoint, std::string kind,
                        std::string auth_token = {});
  ~HttpEmbeddingProvider() override;

  std::uint32_t dim() const override;
  EmbeddingVector get(const std::string& key) const override;
  std::vector<EmbeddingVector> get_many(std::span<const std::string> keys) const override;

 private:
  void fetch_missing(std::span<const std::string> keys) const;

  std::string endpoint_;
  std::string kind_;
  std::string auth_token_;
  mutable std::mutex mu_;
  mutable std::uint32_t dim_ = 0;
  mutable std::unordered_map<std::string, EmbeddingVector> cache_;
};

}  // namespace vnkit::embed
