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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fallax {

/// The 13 canonical fallacy categories, ordered alphabetically by id. This
/// order is the tie-break and score-vector order everywhere in the library.
enum class FallacyId : std::uint8_t {
  AdHominem = 0,
  AdPopulum,
  AppealToEmotion,
  CircularClaim,
  DeductiveFallacy,
  Equivocation,
  FallacyOfCredibility,
  FallacyOfExtension,
  FallacyOfRelevance,
  FalseCausality,
  FalseDilemma,
  FaultyGeneralization,
  IntentionalFallacy,
};

inline constexpr std::size_t kNumFallacies = 13;

/// A sentence pattern with numbered [MSK1], [MSK2], ... placeholders.
struct MaskedTemplate {
  std::string text;
  std::size_t arity = 0;  ///< number of distinct placeholders

  /// Parses `text`, checking that placeholders are numbered 1..arity with
  /// no gaps and that at least one placeholder is present. Throws ParseError.
  static MaskedTemplate parse(std::string text);

  /// Substitutes filler i for every [MSK(i+1)]. Requires fillers.size() ==
  /// arity; the result contains no placeholders.
  std::string render(const std::vector<std::string>& fillers) const;
};

struct FallacyType {
  FallacyId id{};
  std::string id_str;        ///< lowercase snake_case identifier
  std::string display_name;  ///< e.g. "Faulty Generalization"
  std::string description;
  MaskedTemplate logical_form;
  std::vector<std::string> synonyms;  ///< folded, lowercase
};

/// Immutable registry of the 13 fallacy types. Safe for concurrent reads.
class Taxonomy {
 public:
  /// The taxonomy embedded from data/taxonomy.json.
  static const Taxonomy& builtin();

  /// Loads a taxonomy data file (same JSON schema as data/taxonomy.json).
  static Taxonomy load(const std::string& path);
  static Taxonomy from_json_text(std::string_view json_text);

  /// All 13 types in canonical order (alphabetical by id).
  const std::vector<FallacyType>& canonical_types() const { return types_; }

  const FallacyType& by_id(FallacyId id) const {
    return types_[static_cast<std::size_t>(id)];
  }

  /// Case-, whitespace- and punctuation-insensitive lookup over canonical
  /// ids, display names and synonyms. Throws UnknownLabel on no match.
  const FallacyType& normalize_label(std::string_view raw) const;

  const MaskedTemplate& logical_form(FallacyId id) const {
    return by_id(id).logical_form;
  }

  int version() const { return version_; }

 private:
  std::vector<FallacyType> types_;
  std::unordered_map<std::string, FallacyId> lookup_;  // folded key -> id
  int version_ = 0;
};

const std::string& display_name(FallacyId id);
const std::string& id_string(FallacyId id);

}  // namespace fallax
