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
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fallax/corpus.hpp"
#include "fallax/distiller.hpp"
#include "fallax/hypothesis.hpp"
#include "fallax/taxonomy.hpp"

namespace fallax {

enum class PremiseMode : std::uint8_t { Raw, Structural };

const char* premise_mode_name(PremiseMode m);
PremiseMode parse_premise_mode(std::string_view s);

/// Probability that the premise entails the hypothesis, in [0, 1].
/// Three-way NLI backends are expected to fold contradiction and neutral
/// into not-entail before reporting.
class EntailmentScorer {
 public:
  virtual ~EntailmentScorer() = default;
  virtual double score(const std::string& premise,
                       const std::string& hypothesis) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool thread_safe() const { return false; }
};

/// Token-overlap scorer: the fraction of the hypothesis' word tokens whose
/// lemma also occurs in the premise. A deterministic, dependency-free
/// scorer for demos and smoke tests, not a trained NLI model.
class LexicalOverlapScorer : public EntailmentScorer {
 public:
  double score(const std::string& premise,
               const std::string& hypothesis) override;
  std::string name() const override { return "lexical"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }
};

class ConstantScorer : public EntailmentScorer {
 public:
  explicit ConstantScorer(double value) : value_(value) {}
  double score(const std::string&, const std::string&) override {
    return value_;
  }
  std::string name() const override { return "constant"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  double value_;
};

/// Wraps an arbitrary function as a scorer; test fixtures use this.
class FnScorer : public EntailmentScorer {
 public:
  using Fn = std::function<double(const std::string&, const std::string&)>;
  explicit FnScorer(Fn fn, std::string name = "fn")
      : fn_(std::move(fn)), name_(std::move(name)) {}
  double score(const std::string& premise,
               const std::string& hypothesis) override {
    return fn_(premise, hypothesis);
  }
  std::string name() const override { return name_; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return false; }

 private:
  Fn fn_;
  std::string name_;
};

/// Scores looked up from a fixture of {premise, hypothesis, score} records
/// (JSON, one per line). Unknown pairs raise ScorerFailure via score_all.
class FixtureScorer : public EntailmentScorer {
 public:
  static std::unique_ptr<FixtureScorer> from_file(const std::string& path);
  explicit FixtureScorer(
      std::map<std::pair<std::string, std::string>, double> table)
      : table_(std::move(table)) {}
  double score(const std::string& premise,
               const std::string& hypothesis) override;
  std::string name() const override { return "fixture"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  std::map<std::pair<std::string, std::string>, double> table_;
};

struct EntailmentScore {
  FallacyId label{};
  double score = 0.0;
};

struct ClassifierConfig {
  PremiseMode premise_mode = PremiseMode::Raw;
  HypothesisMode hypothesis_mode = HypothesisMode::Raw;
  double decision_threshold = 0.5;
  double positive_weight = 12.0;
  double negative_weight = 1.0;
  // Recorded as 2e-5. The upstream description reads "2^-5", which would be
  // 0.03125 and is presumed a typo for 2e-5.
  double learning_rate = 2e-5;
  std::uint64_t seed = 0;
};

/// Function that turns a claim text into its structure-aware premise.
using DistillFn = std::function<MaskedArgument(const std::string&)>;

/// Raw mode returns the claim text untouched; structural mode returns the
/// distilled masked text.
std::string build_premise(const LabeledClaim& claim, PremiseMode mode,
                          const DistillFn& distiller);

/// One entailment score per canonical type, in canonical order. Scorer
/// exceptions and out-of-range scores become ScorerFailure carrying the
/// label index.
std::vector<EntailmentScore> score_all(const std::string& premise,
                                       HypothesisMode hypothesis_mode,
                                       EntailmentScorer& scorer,
                                       const Taxonomy& tax = Taxonomy::builtin());

/// Argmax over the 13 scores; ties go to the earliest canonical type.
FallacyId predict_single(const std::vector<EntailmentScore>& scores);

/// Every label scoring strictly above the threshold; falls back to the
/// argmax singleton when none does.
std::set<FallacyId> predict_set(const std::vector<EntailmentScore>& scores,
                                double threshold);

struct TrainingPair {
  std::string premise;
  std::string hypothesis;
  bool entail = false;
  double weight = 1.0;
};

/// NLI training pairs for finetuning: per claim, one pair per canonical
/// type from the raw text (entail for gold labels at positive_weight, the
/// rest at negative_weight), plus the same 13 from the masked text when
/// premise_mode is structural. Order is claim order x canonical order; use
/// shuffle_pairs for the seeded training shuffle.
std::vector<TrainingPair> build_training_pairs(
    const Dataset& ds, const ClassifierConfig& cfg, const DistillFn& distiller,
    const Taxonomy& tax = Taxonomy::builtin());

/// Deterministic Fisher-Yates shuffle of the pairs (training uses seed 0).
void shuffle_pairs(std::vector<TrainingPair>& pairs, std::uint64_t seed);

/// What finetune() returns: a scorer plus an echo of the training setup.
struct ScorerHandle {
  std::shared_ptr<EntailmentScorer> scorer;
  std::map<std::string, std::string> metadata;
};

/// Gradient optimization lives behind this interface; the library defines
/// only the contract and the data flow into it.
class TrainerBackend {
 public:
  virtual ~TrainerBackend() = default;
  virtual std::shared_ptr<EntailmentScorer> train(
      const std::vector<TrainingPair>& pairs, const ClassifierConfig& cfg) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
};

/// Reference trainer that memorizes the training pairs: seen pairs score
/// exactly 1 or 0, unseen pairs 0.5.
class MemorizingTrainer : public TrainerBackend {
 public:
  std::shared_ptr<EntailmentScorer> train(
      const std::vector<TrainingPair>& pairs,
      const ClassifierConfig& cfg) override;
  std::string name() const override { return "memorizing"; }
  std::string version() const override { return "1"; }
};

/// Shuffles the pairs with cfg.seed, hands them to the trainer, and wraps
/// the result with metadata echoing the training configuration. Throws
/// EmptyDataset on empty pairs and BackendUnavailable on a null trainer.
ScorerHandle finetune(std::vector<TrainingPair> pairs, TrainerBackend* trainer,
                      const ClassifierConfig& cfg);

}  // namespace fallax
