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

#include "fallax/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "fallax/errors.hpp"
#include "fallax/text.hpp"

namespace fallax {

const char* premise_mode_name(PremiseMode m) {
  return m == PremiseMode::Raw ? "raw" : "structural";
}

PremiseMode parse_premise_mode(std::string_view s) {
  const std::string k = to_lower(s);
  if (k == "raw") return PremiseMode::Raw;
  if (k == "structural" || k == "struct") return PremiseMode::Structural;
  throw ConfigError("unknown premise mode: \"" + std::string(s) + "\"");
}

double LexicalOverlapScorer::score(const std::string& premise,
                                   const std::string& hypothesis) {
  const TokenSequence prem = tokenize(premise);
  const TokenSequence hyp = tokenize(hypothesis);
  std::unordered_set<std::string> premise_lemmas;
  for (const auto& tok : prem.tokens)
    if (!tok.is_punct) premise_lemmas.insert(tok.lemma);
  std::size_t total = 0, hit = 0;
  for (const auto& tok : hyp.tokens) {
    if (tok.is_punct) continue;
    ++total;
    if (premise_lemmas.count(tok.lemma)) ++hit;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(hit) / static_cast<double>(total);
}

std::unique_ptr<FixtureScorer> FixtureScorer::from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scorer fixture: " + path);
  std::map<std::pair<std::string, std::string>, double> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("scorer fixture: ") + e.what(), lineno);
    }
    table[{obj.at("premise").get<std::string>(),
           obj.at("hypothesis").get<std::string>()}] =
        obj.at("score").get<double>();
  }
  return std::make_unique<FixtureScorer>(std::move(table));
}

double FixtureScorer::score(const std::string& premise,
                            const std::string& hypothesis) {
  auto it = table_.find({premise, hypothesis});
  if (it == table_.end())
    throw Error("no fixture score for premise/hypothesis pair");
  return it->second;
}

std::string build_premise(const LabeledClaim& claim, PremiseMode mode,
                          const DistillFn& distiller) {
  if (mode == PremiseMode::Raw) return claim.text;
  if (!distiller)
    throw BackendUnavailable("structural premise mode needs a distiller");
  return distiller(claim.text).masked_text;
}

std::vector<EntailmentScore> score_all(const std::string& premise,
                                       HypothesisMode hypothesis_mode,
                                       EntailmentScorer& scorer,
                                       const Taxonomy& tax) {
  std::vector<EntailmentScore> scores;
  scores.reserve(kNumFallacies);
  const auto& types = tax.canonical_types();
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string hypothesis = build_hypothesis(types[i], hypothesis_mode);
    double value = 0.0;
    try {
      value = scorer.score(premise, hypothesis);
    } catch (const std::exception& e) {
      throw ScorerFailure(e.what(), i);
    }
    if (!std::isfinite(value) || value < 0.0 || value > 1.0)
      throw ScorerFailure("score out of [0, 1]: " + std::to_string(value), i);
    scores.push_back({types[i].id, value});
  }
  return scores;
}

FallacyId predict_single(const std::vector<EntailmentScore>& scores) {
  if (scores.empty()) throw LengthMismatch("predict_single: no scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i].score > scores[best].score) best = i;
  return scores[best].label;
}

std::set<FallacyId> predict_set(const std::vector<EntailmentScore>& scores,
                                double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0)
    throw ConfigError("decision threshold must lie in (0, 1)");
  std::set<FallacyId> out;
  for (const auto& s : scores)
    if (s.score > threshold) out.insert(s.label);
  if (out.empty()) out.insert(predict_single(scores));
  return out;
}

std::vector<TrainingPair> build_training_pairs(const Dataset& ds,
                                               const ClassifierConfig& cfg,
                                               const DistillFn& distiller,
                                               const Taxonomy& tax) {
  if (cfg.positive_weight <= 0.0 || cfg.negative_weight <= 0.0)
    throw ConfigError("training pair weights must be positive");
  std::vector<TrainingPair> pairs;
  const auto& types = tax.canonical_types();
  for (const auto& claim : ds.claims) {
    std::vector<std::string> premises = {claim.text};
    if (cfg.premise_mode == PremiseMode::Structural)
      premises.push_back(
          build_premise(claim, PremiseMode::Structural, distiller));
    for (const auto& premise : premises) {
      for (const auto& type : types) {
        TrainingPair pair;
        pair.premise = premise;
        pair.hypothesis = build_hypothesis(type, cfg.hypothesis_mode);
        pair.entail = claim.labels.count(type.id) > 0;
        pair.weight = pair.entail ? cfg.positive_weight : cfg.negative_weight;
        pairs.push_back(std::move(pair));
      }
    }
  }
  return pairs;
}

void shuffle_pairs(std::vector<TrainingPair>& pairs, std::uint64_t seed) {
  // Fisher-Yates over a splitmix-style stream; stable across platforms.
  std::uint64_t state = seed ^ 0x5851F42D4C957F2Dull;
  auto next = [&state]() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  for (std::size_t i = pairs.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(next() % i);
    std::swap(pairs[i - 1], pairs[j]);
  }
}

namespace {

class MemorizedScorer : public EntailmentScorer {
 public:
  explicit MemorizedScorer(std::map<std::pair<std::string, std::string>, bool> t)
      : table_(std::move(t)) {}
  double score(const std::string& premise,
               const std::string& hypothesis) override {
    auto it = table_.find({premise, hypothesis});
    if (it == table_.end()) return 0.5;
    return it->second ? 1.0 : 0.0;
  }
  std::string name() const override { return "memorized"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  std::map<std::pair<std::string, std::string>, bool> table_;
};

}  // namespace

std::shared_ptr<EntailmentScorer> MemorizingTrainer::train(
    const std::vector<TrainingPair>& pairs, const ClassifierConfig&) {
  std::map<std::pair<std::string, std::string>, bool> table;
  for (const auto& p : pairs) table[{p.premise, p.hypothesis}] = p.entail;
  return std::make_shared<MemorizedScorer>(std::move(table));
}

ScorerHandle finetune(std::vector<TrainingPair> pairs, TrainerBackend* trainer,
                      const ClassifierConfig& cfg) {
  if (pairs.empty()) throw EmptyDataset("finetune: no training pairs");
  if (trainer == nullptr)
    throw BackendUnavailable("finetune: no trainer backend");
  shuffle_pairs(pairs, cfg.seed);
  ScorerHandle handle;
  handle.scorer = trainer->train(pairs, cfg);
  handle.metadata["trainer"] = trainer->name();
  handle.metadata["trainer_version"] = trainer->version();
  handle.metadata["seed"] = std::to_string(cfg.seed);
  handle.metadata["learning_rate"] = std::to_string(cfg.learning_rate);
  handle.metadata["positive_weight"] = std::to_string(cfg.positive_weight);
  handle.metadata["negative_weight"] = std::to_string(cfg.negative_weight);
  handle.metadata["n_pairs"] = std::to_string(pairs.size());
  return handle;
}

}  // namespace fallax
