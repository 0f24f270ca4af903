// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vnkit::text {

// ---------------------------------------------------------------------------
// UTF-8 / character classes
// ---------------------------------------------------------------------------

/// Decodes one code point starting at `pos`; advances `pos` past it.
/// Malformed bytes decode as U+FFFD and advance by one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_cjk(char32_t cp);
bool is_space_cp(char32_t cp);
bool is_punct_cp(char32_t cp);

/// True if the text contains at least one CJK ideograph.
bool contains_cjk(std::string_view text);

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

enum class PosTag { noun, verb, adjective, other };

const char* pos_tag_name(PosTag t);

/// Maps lexicon tag spellings onto the closed tag set. Recognized:
/// noun|n, verb|v, adjective|adj|a; anything else is `other`.
PosTag parse_pos_tag(std::string_view s);

struct Token {
  std::string surface;
  PosTag pos = PosTag::other;
};

struct TokenizedSentence {
  std::string sentence;
  std::vector<Token> tokens;
};

/// Assigns a part-of-speech tag to a token surface. Implementations must be
/// deterministic and safe for concurrent calls.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual PosTag tag(const std::string& surface) const = 0;
};

/// Lookup-table tagger backed by a UTF-8 TSV lexicon (`surface<TAB>pos` per
/// line). Unknown surfaces tag as `other`. This is the deterministic test
/// fallback; production deployments plug in a real CJK tagger instead.
class LexiconTagger : public PosTagger {
 public:
  LexiconTagger() = default;
  explicit LexiconTagger(std::unordered_map<std::string, PosTag> lexicon)
      : lexicon_(std::move(lexicon)) {}

  static LexiconTagger from_tsv(const std::filesystem::path& path);

  void add(std::string surface, PosTag tag) { lexicon_[std::move(surface)] = tag; }
  PosTag tag(const std::string& surface) const override;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

/// Splits text into surfaces: whitespace separates, each CJK ideograph is its
/// own token, contiguous non-CJK runs are single tokens. Punctuation is not
/// a token and never reaches budgets or metrics.
std::vector<std::string> split_surfaces(std::string_view text);

TokenizedSentence tokenize(const std::string& text, const PosTagger& tagger);

/// Tokens whose POS is in {noun, verb, adjective}, order preserved.
std::vector<std::string> visually_relevant_words(const TokenizedSentence& ts);

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

enum class CountingMode { token_count, character_count };

const char* counting_mode_name(CountingMode m);

/// token_count: number of surfaces; character_count: non-whitespace,
/// non-punctuation code points.
int unit_count(std::string_view text, CountingMode mode);

/// How a run resolves the counting mode per text.
struct CountingConfig {
  enum class Select { auto_detect, token, character };
  Select select = Select::auto_detect;

  static CountingConfig parse(std::string_view name);
  std::string name() const;
};

/// auto_detect resolves to character_count when the text contains CJK
/// ideographs and token_count otherwise.
CountingMode resolve_mode(const CountingConfig& cfg, std::string_view text);

int count_units(std::string_view text, const CountingConfig& cfg);

// ---------------------------------------------------------------------------
// N-grams
// ---------------------------------------------------------------------------

/// N-gram key: token surfaces joined with 0x1F (unit separator).
std::string join_ngram(std::span<const std::string> tokens, std::size_t start, int n);

/// All contiguous n-grams with multiplicities; max(0, |tokens| - n + 1) total.
std::unordered_map<std::string, int> ngram_counts(std::span<const std::string> tokens, int n);

}  // namespace vnkit::text
