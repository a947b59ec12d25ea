// Copyright 2026 The Fallax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fallax {

/// One token of an analyzed text. Offsets index bytes of the source string;
/// the slice [char_start, char_end) reproduces `surface` exactly.
struct Token {
  std::string surface;
  std::string lemma;  ///< lowercased lemma; empty for punctuation tokens
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  bool is_punct = false;
  bool is_stopword = false;
  std::size_t sentence_index = 0;
};

struct TokenSequence {
  std::string text;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  /// Number of sentences covered by the tokens (0 for empty input).
  std::size_t sentence_count() const {
    return tokens.empty() ? 0 : tokens.back().sentence_index + 1;
  }
};

using StopwordList = std::unordered_set<std::string>;

/// The shipped list of ~180 common English function words.
const StopwordList& default_stopwords();

/// Loads a stopword list from a file, one word per line.
StopwordList load_stopwords(const std::string& path);

/// Word tokenizer: maximal runs of word characters (ASCII alphanumerics,
/// underscore, and any non-ASCII byte) become word tokens; every other
/// non-space character becomes a single-character punctuation token.
/// Sentence boundaries fall after '.', '!' or '?' followed by whitespace or
/// end of input. Word tokens are lemmatized and checked against `stopwords`.
TokenSequence tokenize(std::string_view text, const StopwordList& stopwords);

inline TokenSequence tokenize(std::string_view text) {
  return tokenize(text, default_stopwords());
}

/// Light plural stemmer (S-stemmer with a small irregulars table) over the
/// lowercased word. Not a full morphological analyzer.
std::string lemmatize(std::string_view word);

/// Canonical form used for label lookup: ASCII-lowercased, apostrophes
/// dropped, all other non-alphanumerics turned into spaces, whitespace
/// collapsed and trimmed.
std::string fold_label(std::string_view raw);

std::string to_lower(std::string_view s);

/// Stable 64-bit FNV-1a hash, used wherever a documented deterministic hash
/// is needed (split assignment, hashed embeddings).
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0);

}  // namespace fallax
