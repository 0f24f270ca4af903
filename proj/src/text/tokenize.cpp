// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/text/tokenize.hpp"

#include <fstream>

#include "vnkit/error.hpp"

namespace vnkit::text {

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  auto is_cont = [&](std::size_t i) {
    return i < s.size() && (byte(i) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && is_cont(pos + 1)) {
    char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
    pos += 2;
    return cp >= 0x80 ? cp : 0xFFFD;
  }
  if ((b0 & 0xF0) == 0xE0 && is_cont(pos + 1) && is_cont(pos + 2)) {
    char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) |
                  (byte(pos + 2) & 0x3Fu);
    pos += 3;
    return cp >= 0x800 ? cp : 0xFFFD;
  }
  if ((b0 & 0xF8) == 0xF0 && is_cont(pos + 1) && is_cont(pos + 2) && is_cont(pos + 3)) {
    char32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                  ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
    pos += 4;
    return (cp >= 0x10000 && cp <= 0x10FFFF) ? cp : 0xFFFD;
  }
  ++pos;
  return 0xFFFD;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_cjk(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||   // CJK Unified Ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||   // Extension A
         (cp >= 0xF900 && cp <= 0xFAFF);     // Compatibility Ideographs
}

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0x3000;  // ideographic space
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x2000 && cp <= 0x206F) ||   // general punctuation
         (cp >= 0x3001 && cp <= 0x303F) ||   // CJK symbols and punctuation
         (cp >= 0xFF01 && cp <= 0xFF0F) ||   // fullwidth forms (punct ranges)
         (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65);
}

bool contains_cjk(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_cjk(decode_utf8(text, pos))) return true;
  }
  return false;
}

const char* pos_tag_name(PosTag t) {
  switch (t) {
    case PosTag::noun:
      return "noun";
    case PosTag::verb:
      return "verb";
    case PosTag::adjective:
      return "adjective";
    case PosTag::other:
      return "other";
  }
  return "?";
}

PosTag parse_pos_tag(std::string_view s) {
  if (s == "noun" || s == "n") return PosTag::noun;
  if (s == "verb" || s == "v") return PosTag::verb;
  if (s == "adjective" || s == "adj" || s == "a") return PosTag::adjective;
  return PosTag::other;
}

LexiconTagger LexiconTagger::from_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path.string());
  std::unordered_map<std::string, PosTag> lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    lex[line.substr(0, tab)] = parse_pos_tag(std::string_view(line).substr(tab + 1));
  }
  return LexiconTagger(std::move(lex));
}

PosTag LexiconTagger::tag(const std::string& surface) const {
  auto it = lexicon_.find(surface);
  return it == lexicon_.end() ? PosTag::other : it->second;
}

std::vector<std::string> split_surfaces(std::string_view text) {
  std::vector<std::string> out;
  std::string run;  // pending non-CJK word characters
  auto flush = [&] {
    if (!run.empty()) {
      out.push_back(run);
      run.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = decode_utf8(text, pos);
    if (is_space_cp(cp) || is_punct_cp(cp)) {
      flush();
      continue;
    }
    if (is_cjk(cp)) {
      flush();
      std::string one;
      append_utf8(one, cp);
      out.push_back(std::move(one));
      continue;
    }
    append_utf8(run, cp);
  }
  flush();
  return out;
}

TokenizedSentence tokenize(const std::string& text, const PosTagger& tagger) {
  TokenizedSentence ts;
  ts.sentence = text;
  for (auto& surface : split_surfaces(text)) {
    Token t;
    t.pos = tagger.tag(surface);
    t.surface = std::move(surface);
    ts.tokens.push_back(std::move(t));
  }
  return ts;
}

std::vector<std::string> visually_relevant_words(const TokenizedSentence& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts.tokens) {
    if (t.pos == PosTag::noun || t.pos == PosTag::verb || t.pos == PosTag::adjective) {
      out.push_back(t.surface);
    }
  }
  return out;
}

const char* counting_mode_name(CountingMode m) {
  return m == CountingMode::token_count ? "token_count" : "character_count";
}

int unit_count(std::string_view text, CountingMode mode) {
  if (mode == CountingMode::token_count) {
    return static_cast<int>(split_surfaces(text).size());
  }
  int n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = decode_utf8(text, pos);
    if (!is_space_cp(cp) && !is_punct_cp(cp)) ++n;
  }
  return n;
}

CountingConfig CountingConfig::parse(std::string_view name) {
  CountingConfig cfg;
  if (name == "auto") {
    cfg.select = Select::auto_detect;
  } else if (name == "token_count" || name == "token") {
    cfg.select = Select::token;
  } else if (name == "character_count" || name == "character") {
    cfg.select = Select::character;
  } else {
    throw InvalidInputError("unknown counting mode: " + std::string(name));
  }
  return cfg;
}

std::string CountingConfig::name() const {
  switch (select) {
    case Select::auto_detect:
      return "auto";
    case Select::token:
      return "token_count";
    case Select::character:
      return "character_count";
  }
  return "?";
}

CountingMode resolve_mode(const CountingConfig& cfg, std::string_view text) {
  switch (cfg.select) {
    case CountingConfig::Select::token:
      return CountingMode::token_count;
    case CountingConfig::Select::character:
      return CountingMode::character_count;
    case CountingConfig::Select::auto_detect:
    default:
      return contains_cjk(text) ? CountingMode::character_count
                                : CountingMode::token_count;
  }
}

int count_units(std::string_view text, const CountingConfig& cfg) {
  return unit_count(text, resolve_mode(cfg, text));
}

std::string join_ngram(std::span<const std::string> tokens, std::size_t start, int n) {
  std::string key;
  for (int k = 0; k < n; ++k) {
    if (k > 0) key.push_back('\x1f');
    key += tokens[start + static_cast<std::size_t>(k)];
  }
  return key;
}

std::unordered_map<std::string, int> ngram_counts(std::span<const std::string> tokens,
                                                  int n) {
  if (n < 1) throw InvalidInputError("ngram order must be >= 1");
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  const std::size_t total = tokens.size() - static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < total; ++i) {
    ++counts[join_ngram(tokens, i, n)];
  }
  return counts;
}

}  // namespace vnkit::text
