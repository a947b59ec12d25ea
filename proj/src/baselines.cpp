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

#include "fallax/baselines.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fallax/errors.hpp"
#include "fallax/text.hpp"

namespace fallax {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string substitute(std::string tmpl, std::string_view key,
                       const std::string& value) {
  const std::string pat = "{" + std::string(key) + "}";
  std::size_t pos = 0;
  while ((pos = tmpl.find(pat, pos)) != std::string::npos) {
    tmpl.replace(pos, pat.size(), value);
    pos += value.size();
  }
  return tmpl;
}

std::map<std::string, double> read_json_number_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture: " + path);
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fixture JSON: ") + e.what());
  }
  std::map<std::string, double> table;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    table[it.key()] = it.value().get<double>();
  return table;
}

}  // namespace

double HashLmBackend::perplexity(const std::string& text) {
  // Uniform in (1, 1001); deterministic in the text alone.
  const double u = static_cast<double>(fnv1a64(text) >> 11) /
                   static_cast<double>(1ull << 53);
  return 1.0 + u * 1000.0;
}

std::unique_ptr<FixtureLmBackend> FixtureLmBackend::from_file(
    const std::string& path) {
  return std::make_unique<FixtureLmBackend>(read_json_number_map(path));
}

double FixtureLmBackend::perplexity(const std::string& text) {
  auto it = table_.find(text);
  if (it == table_.end())
    throw BackendUnavailable("no fixture perplexity for: " + text);
  return it->second;
}

std::unique_ptr<FixtureCompletionBackend> FixtureCompletionBackend::from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture: " + path);
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fixture JSON: ") + e.what());
  }
  std::map<std::string, std::string> table;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    table[it.key()] = it.value().get<std::string>();
  return std::make_unique<FixtureCompletionBackend>(std::move(table));
}

std::string FixtureCompletionBackend::complete(const std::string& prompt,
                                               double) {
  // The prompt embeds the input between "Text: " and the trailing
  // "\n\nLabel:"; completions are keyed by that payload.
  const std::string open = "Text: ";
  const std::string close = "\n\nLabel:";
  std::size_t b = prompt.find(open);
  std::size_t e = prompt.rfind(close);
  std::string key = prompt;
  if (b != std::string::npos && e != std::string::npos && b + open.size() <= e)
    key = prompt.substr(b + open.size(), e - b - open.size());
  auto it = table_.find(key);
  if (it == table_.end()) {
    it = table_.find(prompt);
    if (it == table_.end())
      throw BackendUnavailable("no fixture completion for prompt");
  }
  return it->second;
}

std::vector<FallacyId> random_baseline(std::size_t n,
                                       const std::vector<FallacyId>& labels,
                                       std::uint64_t seed) {
  if (labels.empty()) throw EmptyDataset("random_baseline: no labels");
  std::vector<FallacyId> out;
  out.reserve(n);
  std::uint64_t state = seed;
  const std::uint64_t k = labels.size();
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t draw;
    do {
      draw = splitmix64(state);
    } while (draw >= limit);
    out.push_back(labels[draw % k]);
  }
  return out;
}

FallacyId majority_baseline(const Dataset& train) {
  if (train.claims.empty()) throw EmptyDataset("majority_baseline: no claims");
  std::array<std::size_t, kNumFallacies> counts{};
  for (const auto& claim : train.claims)
    for (FallacyId id : claim.labels) ++counts[static_cast<std::size_t>(id)];
  std::size_t best = 0;
  for (std::size_t i = 1; i < kNumFallacies; ++i)
    if (counts[i] > counts[best]) best = i;
  return static_cast<FallacyId>(best);
}

FallacyId perplexity_rank(const std::string& text,
                          const std::vector<FallacyId>& labels,
                          LmBackend& backend, const BaselineConfig& cfg) {
  if (labels.empty()) throw EmptyDataset("perplexity_rank: no labels");
  double best_ppl = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::string prompt = substitute(cfg.perplexity_template, "label",
                                    display_name(labels[i]));
    prompt = substitute(std::move(prompt), "text", text);
    const double ppl = backend.perplexity(prompt);
    if (i == 0 || ppl < best_ppl) {
      best_ppl = ppl;
      best = i;
    }
  }
  return labels[best];
}

FallacyId prompt_classify(const std::string& text,
                          const std::vector<FallacyId>& labels,
                          CompletionBackend& backend,
                          const BaselineConfig& cfg, const Taxonomy& tax) {
  if (labels.empty()) throw EmptyDataset("prompt_classify: no labels");
  if (cfg.temperature < 0.0)
    throw ConfigError("completion temperature must be >= 0");
  std::string label_list;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) label_list += ", ";
    label_list += display_name(labels[i]);
  }
  std::string prompt = substitute(cfg.prompt_template, "labels", label_list);
  prompt = substitute(std::move(prompt), "text", text);

  const std::string completion = backend.complete(prompt, cfg.temperature);

  auto try_normalize = [&tax](const std::string& s) -> const FallacyType* {
    try {
      return &tax.normalize_label(s);
    } catch (const UnknownLabel&) {
      return nullptr;
    }
  };

  if (const auto* t = try_normalize(completion)) return t->id;
  const std::string first_line = completion.substr(0, completion.find('\n'));
  if (const auto* t = try_normalize(first_line)) return t->id;

  // Last resort: the longest display name occurring inside the completion.
  const std::string folded = " " + fold_label(completion) + " ";
  const FallacyType* best = nullptr;
  for (const auto& type : tax.canonical_types()) {
    const std::string needle = " " + fold_label(type.display_name) + " ";
    if (folded.find(needle) == std::string::npos) continue;
    if (!best || type.display_name.size() > best->display_name.size())
      best = &type;
  }
  if (best) return best->id;
  throw UnparseableCompletion("cannot map completion to a label: \"" +
                              completion + "\"");
}

}  // namespace fallax
