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

#include "fallax/text.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "embedded_data.hpp"
#include "fallax/errors.hpp"

namespace fallax {

namespace {

bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes count as word characters so UTF-8 words stay intact.
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

StopwordList parse_stopwords(std::istream& in) {
  StopwordList words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) words.insert(to_lower(line));
  }
  return words;
}

}  // namespace

const StopwordList& default_stopwords() {
  static const StopwordList words = [] {
    std::istringstream in(detail::kStopwordsText);
    return parse_stopwords(in);
  }();
  return words;
}

StopwordList load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path);
  return parse_stopwords(in);
}

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::string lemmatize(std::string_view word) {
  static const std::unordered_map<std::string, std::string> irregular = {
      {"men", "man"},       {"women", "woman"},     {"people", "person"},
      {"children", "child"}, {"feet", "foot"},      {"teeth", "tooth"},
      {"mice", "mouse"},    {"geese", "goose"},     {"oxen", "ox"},
      {"lives", "life"},    {"wives", "wife"},      {"knives", "knife"},
      {"leaves", "leaf"},   {"selves", "self"},     {"crises", "crisis"},
      {"analyses", "analysis"}, {"theses", "thesis"}, {"phenomena", "phenomenon"},
      {"criteria", "criterion"}, {"data", "datum"},
  };

  std::string w = to_lower(word);
  auto it = irregular.find(w);
  if (it != irregular.end()) return it->second;

  // Harman S-stemmer: collapse plural-ish endings only.
  auto ends_with = [&](std::string_view suf) {
    return w.size() >= suf.size() &&
           std::string_view(w).substr(w.size() - suf.size()) == suf;
  };
  if (w.size() > 4 && ends_with("ies") && !ends_with("eies") &&
      !ends_with("aies")) {
    w.replace(w.size() - 3, 3, "y");
  } else if (w.size() > 3 && ends_with("es") && !ends_with("aes") &&
             !ends_with("ees") && !ends_with("oes")) {
    w.pop_back();
  } else if (w.size() > 3 && ends_with("s") && !ends_with("us") &&
             !ends_with("ss")) {
    w.pop_back();
  }
  return w;
}

TokenSequence tokenize(std::string_view text, const StopwordList& stopwords) {
  TokenSequence seq;
  seq.text.assign(text);
  std::size_t sentence = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space_byte(c)) {
      ++i;
      continue;
    }
    Token tok;
    tok.char_start = i;
    if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < n && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
      tok.char_end = j;
      tok.surface.assign(text.substr(i, j - i));
      tok.lemma = lemmatize(tok.surface);
      tok.is_stopword = stopwords.count(to_lower(tok.surface)) > 0;
      i = j;
    } else {
      tok.char_end = i + 1;
      tok.surface.assign(text.substr(i, 1));
      tok.is_punct = true;
      i += 1;
    }
    tok.sentence_index = sentence;
    // Sentence boundary: terminal punctuation followed by whitespace or end.
    if (tok.is_punct && is_terminal(tok.surface[0]) &&
        (i >= n || is_space_byte(static_cast<unsigned char>(text[i])))) {
      ++sentence;
    }
    seq.tokens.push_back(std::move(tok));
  }
  return seq;
}

std::string fold_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    // Drop apostrophes, both ASCII and U+2019.
    if (c == '\'') continue;
    if (c == 0xE2 && i + 2 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0x80 &&
        static_cast<unsigned char>(raw[i + 2]) == 0x99) {
      i += 2;
      continue;
    }
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fallax
