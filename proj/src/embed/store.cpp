// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/embed/store.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "vnkit/error.hpp"

namespace vnkit::embed {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', 'S'};
constexpr std::uint32_t kFormatVersion = 1;

// All multi-byte fields are little-endian on disk regardless of host order.

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, float f) {
  put_u32(out, std::bit_cast<std::uint32_t>(f));
}

class Reader {
 public:
  Reader(const char* data, std::size_t size) : data_(data), size_(size) {}

  std::size_t offset() const { return pos_; }

  void need(std::size_t n, const char* what) const {
    if (pos_ + n > size_) {
      throw FormatError(std::string("embedding store truncated while reading ") + what,
                        pos_);
    }
  }

  std::uint16_t u16(const char* what) {
    need(2, what);
    auto b = bytes();
    std::uint16_t v = static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    pos_ += 2;
    return v;
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    auto b = bytes();
    std::uint32_t v = static_cast<std::uint32_t>(b[0]) |
                      (static_cast<std::uint32_t>(b[1]) << 8) |
                      (static_cast<std::uint32_t>(b[2]) << 16) |
                      (static_cast<std::uint32_t>(b[3]) << 24);
    pos_ += 4;
    return v;
  }

  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }

  std::string str(std::size_t n, const char* what) {
    need(n, what);
    std::string s(data_ + pos_, n);
    pos_ += n;
    return s;
  }

 private:
  const unsigned char* bytes() const {
    return reinterpret_cast<const unsigned char*>(data_ + pos_);
  }

  const char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding store: " + path.string());
  std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader r(blob.data(), blob.size());
  const std::string magic = r.str(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw FormatError("embedding store has bad magic (expected \"EMBS\")", 0);
  }
  const std::uint32_t version = r.u32("version");
  if (version != kFormatVersion) {
    throw FormatError("unsupported embedding store version " + std::to_string(version), 4);
  }
  const std::uint32_t dim = r.u32("dimension");
  const std::uint32_t count = r.u32("entry count");
  if (dim == 0 && count > 0) {
    throw FormatError("embedding store declares zero dimension with entries", 8);
  }

  EmbeddingStore store(dim);
  for (std::uint32_t e = 0; e < count; ++e) {
    const std::uint16_t key_len = r.u16("key length");
    std::string key = r.str(key_len, "key bytes");
    std::vector<float> raw(dim);
    for (std::uint32_t i = 0; i < dim; ++i) raw[i] = r.f32("vector values");
    store.put(key, std::move(raw));
  }
  if (store.size() != count) {
    throw FormatError("embedding store contains duplicate keys", r.offset());
  }
  return store;
}

void EmbeddingStore::save(const std::filesystem::path& path) const {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kFormatVersion);
  put_u32(out, dim_);
  put_u32(out, static_cast<std::uint32_t>(entries_.size()));
  for (const auto& [key, entry] : entries_) {
    if (key.size() > 0xFFFF) throw InvalidInputError("embedding key too long: " + key);
    put_u16(out, static_cast<std::uint16_t>(key.size()));
    out += key;
    for (float f : entry.raw) put_f32(out, f);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write embedding store: " + path.string());
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("short write to embedding store: " + path.string());
}

void EmbeddingStore::put(const std::string& key, std::vector<float> raw) {
  if (dim_ == 0) dim_ = static_cast<std::uint32_t>(raw.size());
  if (raw.size() != dim_) {
    throw InvalidInputError("embedding dimension mismatch for key '" + key + "': " +
                            std::to_string(raw.size()) + " vs store dimension " +
                            std::to_string(dim_));
  }
  Entry entry;
  entry.unit = normalized(EmbeddingVector{raw});
  entry.raw = std::move(raw);
  entries_[key] = std::move(entry);
}

const EmbeddingVector& EmbeddingStore::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw MissingEmbeddingError(key);
  return it->second.unit;
}

const std::vector<float>& EmbeddingStore::get_raw(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw MissingEmbeddingError(key);
  return it->second.raw;
}

std::vector<std::string> EmbeddingStore::keys_with_prefix(std::string_view prefix) const {
  std::vector<std::string> out;
  for (auto it = entries_.lower_bound(std::string(prefix)); it != entries_.end(); ++it) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    out.push_back(it->first);
  }
  return out;
}

std::vector<std::string> EmbeddingStore::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

}  // namespace vnkit::embed
