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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fallax/taxonomy.hpp"

namespace fallax {

enum class Split : std::uint8_t { Train = 0, Dev, Test };

const char* split_name(Split s);
Split parse_split(std::string_view s);

enum class Schema : std::uint8_t { SingleLabel, MultiLabel };

struct LabeledClaim {
  std::string text;
  std::set<FallacyId> labels;  // nonempty; singleton under SingleLabel
  std::optional<std::string> source;
  Split split = Split::Train;
};

struct Dataset {
  std::string name;
  Schema schema = Schema::SingleLabel;
  std::vector<LabeledClaim> claims;  // file order

  std::size_t size() const { return claims.size(); }
  /// Claims of one split, in file order.
  std::vector<LabeledClaim> split_claims(Split s) const;
  std::array<std::size_t, 3> split_sizes() const;
};

struct CorpusStats {
  std::size_t n_samples = 0;
  std::size_t n_sentences = 0;
  std::size_t n_tokens = 0;
  std::size_t vocab_size = 0;  // distinct lowercased tokens
};

/// Loads a dataset file. `.csv` files are parsed as comma-separated records
/// with a header row; anything else as line-delimited JSON records with
/// fields {text, labels, source?, split?}. Records missing a split are
/// assigned one afterwards via assign_missing_splits. Labels go through
/// Taxonomy::normalize_label; errors carry the input line number.
Dataset load_dataset(const std::string& path, Schema schema,
                     const Taxonomy& taxonomy = Taxonomy::builtin());

/// Serializes to the line-delimited JSON record format (stable field order,
/// so load -> save -> load round-trips byte-identically).
void save_jsonl(const Dataset& ds, const std::string& path);
std::string to_jsonl(const Dataset& ds);

/// Deterministic split assignment for claims without one: a stable hash of
/// the claim text (fnv1a64 with `seed`) is mapped to train/dev/test with the
/// given proportions. Defaults match the shipped single-label corpus
/// (1849:300:300).
void assign_missing_splits(std::vector<std::optional<Split>>& splits,
                           const std::vector<std::string>& texts,
                           double train_frac = 1849.0 / 2449.0,
                           double dev_frac = 300.0 / 2449.0,
                           std::uint64_t seed = 0);

/// Sample/sentence/token/vocab counts over one split or the whole set,
/// using the documented tokenizer (punctuation marks count as tokens).
CorpusStats compute_stats(const Dataset& ds,
                          std::optional<Split> split = std::nullopt);

/// Fraction of claims whose label set contains each type. Values lie in
/// [0, 1]; under a multi-label schema they may sum to more than 1.
/// Throws EmptyDataset on an empty dataset.
std::map<FallacyId, double> label_frequencies(const Dataset& ds);

}  // namespace fallax
