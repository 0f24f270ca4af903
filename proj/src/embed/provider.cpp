// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/embed/provider.hpp"

#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vnkit/error.hpp"
#include "vnkit/util/rng.hpp"

namespace vnkit::embed {

std::vector<EmbeddingVector> EmbeddingProvider::get_many(
    std::span<const std::string> keys) const {
  std::vector<EmbeddingVector> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(get(k));
  return out;
}

EmbeddingVector HashEmbeddingProvider::get(const std::string& key) const {
  util::SplitMix64 rng(util::fnv1a64(key) ^ (seed_ * 0x9E3779B97F4A7C15ULL));
  std::vector<double> vals(dim_);
  double sq = 0.0;
  for (std::uint32_t i = 0; i < dim_; ++i) {
    vals[i] = 2.0 * rng.unit() - 1.0;
    sq += vals[i] * vals[i];
  }
  const double inv = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
  EmbeddingVector out;
  out.values.resize(dim_);
  for (std::uint32_t i = 0; i < dim_; ++i) {
    out.values[i] = static_cast<float>(vals[i] * inv);
  }
  return out;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string endpoint, std::string kind,
                                             std::string auth_token)
    : endpoint_(std::move(endpoint)),
      kind_(std::move(kind)),
      auth_token_(std::move(auth_token)) {
  if (kind_ != "text" && kind_ != "frame") {
    throw InvalidInputError("embedding kind must be \"text\" or \"frame\", got \"" +
                            kind_ + "\"");
  }
}

HttpEmbeddingProvider::~HttpEmbeddingProvider() = default;

std::uint32_t HttpEmbeddingProvider::dim() const {
  std::lock_guard<std::mutex> lock(mu_);
  return dim_;
}

EmbeddingVector HttpEmbeddingProvider::get(const std::string& key) const {
  const std::string keys[1] = {key};
  fetch_missing(keys);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it == cache_.end()) throw MissingEmbeddingError(key);
  return it->second;
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::get_many(
    std::span<const std::string> keys) const {
  fetch_missing(keys);
  std::vector<EmbeddingVector> out;
  out.reserve(keys.size());
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& k : keys) {
    auto it = cache_.find(k);
    if (it == cache_.end()) throw MissingEmbeddingError(k);
    out.push_back(it->second);
  }
  return out;
}

void HttpEmbeddingProvider::fetch_missing(std::span<const std::string> keys) const {
  nlohmann::json want = nlohmann::json::array();
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& k : keys) {
      if (cache_.find(k) == cache_.end()) want.push_back(k);
    }
  }
  if (want.empty()) return;

  nlohmann::json body = {{"keys", want}, {"kind", kind_}};
  httplib::Client client(endpoint_);
  client.set_read_timeout(30, 0);
  httplib::Headers headers;
  if (!auth_token_.empty()) headers.emplace("Authorization", "Bearer " + auth_token_);

  auto res = client.Post("/embed", headers, body.dump(), "application/json");
  if (!res) {
    throw IoError("embedding service unreachable at " + endpoint_);
  }
  if (res->status != 200) {
    throw IoError("embedding service returned status " + std::to_string(res->status));
  }

  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("embedding service returned invalid JSON: ") + e.what());
  }
  if (!reply.contains("dim") || !reply.contains("vectors")) {
    throw IoError("embedding service reply missing \"dim\" or \"vectors\"");
  }

  std::lock_guard<std::mutex> lock(mu_);
  const std::uint32_t d = reply["dim"].get<std::uint32_t>();
  if (dim_ == 0) dim_ = d;
  if (d != dim_) {
    throw IoError("embedding service changed dimension: " + std::to_string(d) + " vs " +
                  std::to_string(dim_));
  }
  for (const auto& [key, arr] : reply["vectors"].items()) {
    EmbeddingVector v;
    v.values = arr.get<std::vector<float>>();
    if (v.dim() != dim_) {
      throw IoError("embedding service returned wrong dimension for key '" + key + "'");
    }
    cache_[key] = normalized(v);
  }
}

}  // namespace vnkit::embed
