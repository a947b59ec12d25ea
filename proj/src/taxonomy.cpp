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

#include "fallax/taxonomy.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "embedded_data.hpp"
#include "fallax/errors.hpp"
#include "fallax/text.hpp"

namespace fallax {

namespace {

// Must stay aligned with the FallacyId enumerator order.
const std::array<const char*, kNumFallacies> kIdStrings = {
    "ad_hominem",
    "ad_populum",
    "appeal_to_emotion",
    "circular_claim",
    "deductive_fallacy",
    "equivocation",
    "fallacy_of_credibility",
    "fallacy_of_extension",
    "fallacy_of_relevance",
    "false_causality",
    "false_dilemma",
    "faulty_generalization",
    "intentional_fallacy",
};

}  // namespace

MaskedTemplate MaskedTemplate::parse(std::string text) {
  std::set<std::size_t> seen;
  const std::string_view sv = text;
  std::size_t pos = 0;
  while ((pos = sv.find("[MSK", pos)) != std::string_view::npos) {
    std::size_t digits = pos + 4;
    std::size_t end = digits;
    while (end < sv.size() && sv[end] >= '0' && sv[end] <= '9') ++end;
    if (end == digits || end >= sv.size() || sv[end] != ']')
      throw ParseError("malformed placeholder in template: " + text);
    std::size_t index = 0;
    for (std::size_t i = digits; i < end; ++i)
      index = index * 10 + static_cast<std::size_t>(sv[i] - '0');
    if (index == 0) throw ParseError("placeholder indices are 1-based: " + text);
    seen.insert(index);
    pos = end + 1;
  }
  if (seen.empty())
    throw ParseError("template contains no [MSKi] placeholder: " + text);
  if (*seen.rbegin() != seen.size())
    throw ParseError("placeholder numbering has gaps: " + text);
  MaskedTemplate t;
  t.text = std::move(text);
  t.arity = seen.size();
  return t;
}

std::string MaskedTemplate::render(
    const std::vector<std::string>& fillers) const {
  if (fillers.size() != arity)
    throw LengthMismatch("template arity " + std::to_string(arity) + ", got " +
                         std::to_string(fillers.size()) + " fillers");
  std::string out = text;
  for (std::size_t i = arity; i >= 1; --i) {
    const std::string ph = "[MSK" + std::to_string(i) + "]";
    std::size_t pos = 0;
    while ((pos = out.find(ph, pos)) != std::string::npos) {
      out.replace(pos, ph.size(), fillers[i - 1]);
      pos += fillers[i - 1].size();
    }
  }
  return out;
}

Taxonomy Taxonomy::from_json_text(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("taxonomy JSON: ") + e.what());
  }

  Taxonomy tax;
  tax.version_ = doc.value("version", 0);
  const auto& types = doc.at("types");
  if (types.size() != kNumFallacies)
    throw ParseError("taxonomy must define exactly " +
                     std::to_string(kNumFallacies) + " types, found " +
                     std::to_string(types.size()));

  tax.types_.resize(kNumFallacies);
  std::set<std::string> seen_ids;
  for (const auto& entry : types) {
    FallacyType t;
    t.id_str = entry.at("id").get<std::string>();
    auto it = std::find(kIdStrings.begin(), kIdStrings.end(), t.id_str);
    if (it == kIdStrings.end())
      throw ParseError("unknown canonical id: " + t.id_str);
    t.id = static_cast<FallacyId>(it - kIdStrings.begin());
    if (!seen_ids.insert(t.id_str).second)
      throw ParseError("duplicate type id: " + t.id_str);
    t.display_name = entry.at("display_name").get<std::string>();
    t.description = entry.at("description").get<std::string>();
    t.logical_form =
        MaskedTemplate::parse(entry.at("logical_form").get<std::string>());
    for (const auto& syn : entry.at("synonyms"))
      t.synonyms.push_back(fold_label(syn.get<std::string>()));
    tax.types_[static_cast<std::size_t>(t.id)] = std::move(t);
  }

  // Build the flat lookup table; duplicates across types are a data error.
  auto add_key = [&tax](const std::string& key, FallacyId id,
                        const char* kind) {
    if (key.empty()) throw ParseError(std::string("empty ") + kind + " key");
    auto [it, inserted] = tax.lookup_.emplace(key, id);
    if (!inserted && it->second != id)
      throw ParseError("label \"" + key + "\" maps to two types");
  };
  for (const auto& t : tax.types_) {
    add_key(fold_label(t.id_str), t.id, "id");
    add_key(fold_label(t.display_name), t.id, "display name");
    for (const auto& syn : t.synonyms) add_key(syn, t.id, "synonym");
  }
  return tax;
}

Taxonomy Taxonomy::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open taxonomy file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

const Taxonomy& Taxonomy::builtin() {
  static const Taxonomy tax = from_json_text(detail::kTaxonomyJson);
  return tax;
}

const FallacyType& Taxonomy::normalize_label(std::string_view raw) const {
  const std::string key = fold_label(raw);
  auto it = lookup_.find(key);
  if (it == lookup_.end()) throw UnknownLabel(std::string(raw));
  return by_id(it->second);
}

const std::string& display_name(FallacyId id) {
  return Taxonomy::builtin().by_id(id).display_name;
}

const std::string& id_string(FallacyId id) {
  return Taxonomy::builtin().by_id(id).id_str;
}

}  // namespace fallax
