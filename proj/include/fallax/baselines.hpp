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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fallax/corpus.hpp"
#include "fallax/taxonomy.hpp"

namespace fallax {

/// Language model that reports the perplexity of a string (positive real).
class LmBackend {
 public:
  virtual ~LmBackend() = default;
  virtual double perplexity(const std::string& text) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool thread_safe() const { return false; }
};

/// Text completion provider (prompt in, continuation out).
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::string complete(const std::string& prompt,
                               double temperature) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool thread_safe() const { return false; }
};

/// Deterministic pseudo-perplexity from a hash of the text. A stand-in so
/// the perplexity baseline runs offline; carries no linguistic signal.
class HashLmBackend : public LmBackend {
 public:
  double perplexity(const std::string& text) override;
  std::string name() const override { return "hash"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }
};

/// Perplexities looked up from a JSON object file {text: value, ...}.
class FixtureLmBackend : public LmBackend {
 public:
  static std::unique_ptr<FixtureLmBackend> from_file(const std::string& path);
  explicit FixtureLmBackend(std::map<std::string, double> table)
      : table_(std::move(table)) {}
  double perplexity(const std::string& text) override;
  std::string name() const override { return "fixture"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  std::map<std::string, double> table_;
};

/// Completions looked up from a JSON object file {text: completion, ...},
/// keyed by the "Text:" payload embedded in the prompt.
class FixtureCompletionBackend : public CompletionBackend {
 public:
  static std::unique_ptr<FixtureCompletionBackend> from_file(
      const std::string& path);
  explicit FixtureCompletionBackend(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}
  std::string complete(const std::string& prompt, double temperature) override;
  std::string name() const override { return "fixture"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  std::map<std::string, std::string> table_;
};

struct BaselineConfig {
  std::uint64_t seed = 1;
  double temperature = 0.0;
  /// Completion-classification prompt; {labels} and {text} are substituted.
  std::string prompt_template =
      "Please classify a piece of text into the following categories of "
      "logical fallacies: {labels}.\n\nText: {text}\n\nLabel:";
  /// Concatenation used for perplexity ranking; {label} and {text} are
  /// substituted. The pairing of label and text is a free choice, so it
  /// lives here rather than in code.
  std::string perplexity_template = "This example of {label}: {text}";
};

/// Uniform i.i.d. label draws from a documented PRNG (splitmix64 stream
/// with rejection sampling), reproducible from the seed alone.
std::vector<FallacyId> random_baseline(std::size_t n,
                                       const std::vector<FallacyId>& labels,
                                       std::uint64_t seed);

/// Most frequent gold label of the dataset; ties go to the earliest
/// canonical type. Throws EmptyDataset.
FallacyId majority_baseline(const Dataset& train);

/// Renders the perplexity template per label and returns the label whose
/// concatenation has the lowest backend perplexity; ties go to the earliest
/// canonical type.
FallacyId perplexity_rank(const std::string& text,
                          const std::vector<FallacyId>& labels,
                          LmBackend& backend,
                          const BaselineConfig& cfg = {});

/// Prompts the completion backend at the configured temperature and maps
/// the completion back to a canonical label: first the folded completion,
/// then its first line, then its longest label-name substring. Throws
/// UnparseableCompletion when nothing matches.
FallacyId prompt_classify(const std::string& text,
                          const std::vector<FallacyId>& labels,
                          CompletionBackend& backend,
                          const BaselineConfig& cfg = {},
                          const Taxonomy& tax = Taxonomy::builtin());

}  // namespace fallax
