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

#include "fallax/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fallax/errors.hpp"
#include "fallax/text.hpp"

namespace fallax {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct RawRecord {
  std::string text;
  std::vector<std::string> labels;
  std::optional<std::string> source;
  std::optional<std::string> split;
  std::size_t line = 0;
};

std::vector<RawRecord> read_jsonl(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON record: ") + e.what(), lineno);
    }
    if (!obj.is_object()) throw ParseError("record is not an object", lineno);
    RawRecord rec;
    rec.line = lineno;
    if (!obj.contains("text") || !obj["text"].is_string())
      throw ParseError("missing string field \"text\"", lineno);
    rec.text = obj["text"].get<std::string>();
    if (!obj.contains("labels") || !obj["labels"].is_array())
      throw ParseError("missing list field \"labels\"", lineno);
    for (const auto& l : obj["labels"]) {
      if (!l.is_string()) throw ParseError("non-string label", lineno);
      rec.labels.push_back(l.get<std::string>());
    }
    if (obj.contains("source") && !obj["source"].is_null())
      rec.source = obj["source"].get<std::string>();
    if (obj.contains("split") && !obj["split"].is_null())
      rec.split = obj["split"].get<std::string>();
    records.push_back(std::move(rec));
  }
  return records;
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, commas and
// newlines inside quotes.
std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_open = false;
  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get(c);
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_open = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_open = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_open || !field.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
          row_open = false;
        }
        break;
      default:
        field.push_back(c);
        row_open = true;
        break;
    }
  }
  if (in_quotes) throw ParseError("unterminated quote at end of CSV input");
  if (row_open || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RawRecord> read_csv_records(std::istream& in) {
  auto rows = read_csv(in);
  if (rows.empty()) return {};
  const auto& header = rows.front();
  auto col = [&header](std::string_view name) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (to_lower(trim(header[i])) == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  const auto text_col = col("text");
  const auto labels_col = col("labels");
  const auto source_col = col("source");
  const auto split_col = col("split");
  if (text_col < 0 || labels_col < 0)
    throw ParseError("CSV header must name \"text\" and \"labels\" columns", 1);

  std::vector<RawRecord> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&row](std::ptrdiff_t i) -> std::string {
      return (i >= 0 && static_cast<std::size_t>(i) < row.size())
                 ? row[static_cast<std::size_t>(i)]
                 : std::string();
    };
    RawRecord rec;
    rec.line = r + 1;
    rec.text = cell(text_col);
    // Multiple labels are separated by '|'.
    std::istringstream labels(cell(labels_col));
    std::string label;
    while (std::getline(labels, label, '|')) {
      label = trim(label);
      if (!label.empty()) rec.labels.push_back(label);
    }
    const std::string source = trim(cell(source_col));
    if (!source.empty()) rec.source = source;
    const std::string split = trim(cell(split_col));
    if (!split.empty()) rec.split = split;
    records.push_back(std::move(rec));
  }
  return records;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

const char* split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

Split parse_split(std::string_view s) {
  const std::string k = to_lower(trim(s));
  if (k == "train") return Split::Train;
  if (k == "dev" || k == "valid" || k == "validation") return Split::Dev;
  if (k == "test") return Split::Test;
  throw ParseError("unknown split: \"" + std::string(s) + "\"");
}

std::vector<LabeledClaim> Dataset::split_claims(Split s) const {
  std::vector<LabeledClaim> out;
  for (const auto& c : claims)
    if (c.split == s) out.push_back(c);
  return out;
}

std::array<std::size_t, 3> Dataset::split_sizes() const {
  std::array<std::size_t, 3> sizes = {0, 0, 0};
  for (const auto& c : claims) ++sizes[static_cast<std::size_t>(c.split)];
  return sizes;
}

void assign_missing_splits(std::vector<std::optional<Split>>& splits,
                           const std::vector<std::string>& texts,
                           double train_frac, double dev_frac,
                           std::uint64_t seed) {
  if (splits.size() != texts.size())
    throw LengthMismatch("splits/texts size mismatch");
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i]) continue;
    const double u = static_cast<double>(fnv1a64(texts[i], seed) >> 11) /
                     static_cast<double>(1ull << 53);
    if (u < train_frac)
      splits[i] = Split::Train;
    else if (u < train_frac + dev_frac)
      splits[i] = Split::Dev;
    else
      splits[i] = Split::Test;
  }
}

Dataset load_dataset(const std::string& path, Schema schema,
                     const Taxonomy& taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset file: " + path);

  std::vector<RawRecord> records =
      ends_with(path, ".csv") ? read_csv_records(in) : read_jsonl(in);

  Dataset ds;
  ds.schema = schema;
  {
    // Dataset name = file stem.
    std::size_t slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = stem.find_last_of('.');
    ds.name = dot == std::string::npos ? stem : stem.substr(0, dot);
  }

  std::vector<std::optional<Split>> splits;
  std::vector<std::string> texts;
  for (const auto& rec : records) {
    LabeledClaim claim;
    claim.text = rec.text;
    if (trim(claim.text).empty())
      throw ParseError("empty claim text", rec.line);
    if (rec.labels.empty()) throw ParseError("record has no labels", rec.line);
    if (schema == Schema::SingleLabel && rec.labels.size() > 1)
      throw SchemaViolation("line " + std::to_string(rec.line) +
                            ": multi-label record in single_label mode");
    for (const auto& raw : rec.labels) {
      try {
        claim.labels.insert(taxonomy.normalize_label(raw).id);
      } catch (const UnknownLabel&) {
        throw UnknownLabel(raw + " (line " + std::to_string(rec.line) + ")");
      }
    }
    claim.source = rec.source;
    if (rec.split) {
      try {
        claim.split = parse_split(*rec.split);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), rec.line);
      }
      splits.emplace_back(claim.split);
    } else {
      splits.emplace_back(std::nullopt);
    }
    texts.push_back(claim.text);
    ds.claims.push_back(std::move(claim));
  }

  assign_missing_splits(splits, texts);
  for (std::size_t i = 0; i < ds.claims.size(); ++i)
    ds.claims[i].split = *splits[i];
  return ds;
}

std::string to_jsonl(const Dataset& ds) {
  std::ostringstream out;
  for (const auto& claim : ds.claims) {
    nlohmann::json obj;
    obj["text"] = claim.text;
    nlohmann::json labels = nlohmann::json::array();
    for (FallacyId id : claim.labels) labels.push_back(id_string(id));
    obj["labels"] = labels;
    if (claim.source) obj["source"] = *claim.source;
    obj["split"] = split_name(claim.split);
    out << obj.dump() << '\n';
  }
  return out.str();
}

void save_jsonl(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset file: " + path);
  out << to_jsonl(ds);
}

CorpusStats compute_stats(const Dataset& ds, std::optional<Split> split) {
  CorpusStats stats;
  std::unordered_set<std::string> vocab;
  for (const auto& claim : ds.claims) {
    if (split && claim.split != *split) continue;
    ++stats.n_samples;
    const TokenSequence seq = tokenize(claim.text);
    stats.n_tokens += seq.size();
    stats.n_sentences += seq.sentence_count();
    for (const auto& tok : seq.tokens) vocab.insert(to_lower(tok.surface));
  }
  stats.vocab_size = vocab.size();
  return stats;
}

std::map<FallacyId, double> label_frequencies(const Dataset& ds) {
  if (ds.claims.empty()) throw EmptyDataset("label_frequencies: no claims");
  std::map<FallacyId, double> freq;
  for (std::size_t i = 0; i < kNumFallacies; ++i)
    freq[static_cast<FallacyId>(i)] = 0.0;
  for (const auto& claim : ds.claims)
    for (FallacyId id : claim.labels) freq[id] += 1.0;
  for (auto& [id, count] : freq) count /= static_cast<double>(ds.claims.size());
  return freq;
}

}  // namespace fallax
