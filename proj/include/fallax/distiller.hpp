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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fallax/text.hpp"

namespace fallax {

/// Half-open token index range [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - begin; }
  bool operator==(const TokenSpan&) const = default;
  auto operator<=>(const TokenSpan&) const = default;
};

/// Coreference chains over a token sequence; each chain is a list of
/// mention spans referring to the same entity.
struct CorefChains {
  std::vector<std::vector<TokenSpan>> chains;

  bool empty() const { return chains.empty(); }
};

/// One real vector per token. Backends that split a word into subunits are
/// expected to pool them back to a single vector.
using TokenVectors = std::vector<std::vector<double>>;

/// Contextual embedding provider. `thread_safe() == false` makes the
/// pipeline serialize all calls to this backend.
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual TokenVectors embed(const TokenSequence& tokens) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool thread_safe() const { return false; }
};

class CorefBackend {
 public:
  virtual ~CorefBackend() = default;
  virtual CorefChains resolve(const TokenSequence& tokens) = 0;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool thread_safe() const { return false; }
};

/// Deterministic per-word embedding derived from a hash of the lowercased
/// surface: equal words get identical unit vectors (cosine 1), distinct
/// words get pseudo-random ones whose cosine is far below any useful
/// threshold with near certainty. A dependency-free stand-in for a real
/// sentence encoder.
class HashedEmbeddingBackend : public EmbeddingBackend {
 public:
  explicit HashedEmbeddingBackend(std::size_t dim = 32) : dim_(dim) {}
  TokenVectors embed(const TokenSequence& tokens) override;
  std::string name() const override { return "hashed"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }

 private:
  std::size_t dim_;
};

/// Zero vectors for every token; similarity links never fire.
class NullEmbeddingBackend : public EmbeddingBackend {
 public:
  TokenVectors embed(const TokenSequence& tokens) override;
  std::string name() const override { return "none"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }
};

/// Vectors read from a fixture: whitespace-separated reals, one token per
/// line. Lines are consumed in token order across successive embed() calls,
/// so the backend is stateful and declares itself exclusive.
class FixtureEmbeddingBackend : public EmbeddingBackend {
 public:
  static std::unique_ptr<FixtureEmbeddingBackend> from_file(
      const std::string& path);
  explicit FixtureEmbeddingBackend(TokenVectors vectors)
      : vectors_(std::move(vectors)) {}

  TokenVectors embed(const TokenSequence& tokens) override;
  void reset() { cursor_ = 0; }
  std::string name() const override { return "fixture"; }
  std::string version() const override { return "1"; }

 private:
  TokenVectors vectors_;
  std::size_t cursor_ = 0;
};

class NullCorefBackend : public CorefBackend {
 public:
  CorefChains resolve(const TokenSequence&) override { return {}; }
  std::string name() const override { return "none"; }
  std::string version() const override { return "1"; }
  bool thread_safe() const override { return true; }
};

/// Chains read from a fixture file: one JSON array per line, one line per
/// resolve() call, each chain a list of [begin, end) token spans.
class FixtureCorefBackend : public CorefBackend {
 public:
  static std::unique_ptr<FixtureCorefBackend> from_file(
      const std::string& path);
  explicit FixtureCorefBackend(std::vector<CorefChains> per_call)
      : per_call_(std::move(per_call)) {}

  CorefChains resolve(const TokenSequence& tokens) override;
  void reset() { cursor_ = 0; }
  std::string name() const override { return "fixture"; }
  std::string version() const override { return "1"; }

 private:
  std::vector<CorefChains> per_call_;
  std::size_t cursor_ = 0;
};

struct DistillerConfig {
  double similarity_threshold = 0.7;  // strict: link when cosine > threshold
  StopwordList stopword_list = default_stopwords();
  bool merge_contiguous = true;
};

/// Unordered token-index pairs judged similar, with their cosine values.
/// Mandatory links (coreference, lemma equality) carry similarity 1.
struct LinkSet {
  std::set<std::pair<std::size_t, std::size_t>> pairs;  // first < second
  std::map<std::pair<std::size_t, std::size_t>, double> similarity;

  bool contains(std::size_t i, std::size_t j) const {
    return pairs.count(i < j ? std::make_pair(i, j) : std::make_pair(j, i)) > 0;
  }
};

/// A group of mutually similar spans sharing one mask index.
struct SpanGroup {
  std::size_t group_id = 0;      // 1-based, in first-occurrence order
  std::vector<TokenSpan> spans;  // disjoint contiguous token runs
};

struct MaskedArgument {
  std::string original_text;
  std::string masked_text;
  std::vector<SpanGroup> groups;
  DistillerConfig config_used;
};

/// Runs the coreference backend and validates the returned chains (spans in
/// range, no identical mentions within a chain). A null backend yields
/// empty chains.
CorefChains resolve_coreference(const TokenSequence& tokens,
                                CorefBackend* backend);

/// Links every non-stopword word pair whose cosine exceeds the threshold
/// (strictly), plus every pair sharing a lemma, plus every pair covered by
/// mentions of one coreference chain. Requires one finite vector per token.
LinkSet link_similar(const TokenSequence& tokens, const TokenVectors& vectors,
                     const DistillerConfig& cfg,
                     const CorefChains& coref = {});

/// Connected components of the link graph, with adjacent aligned links
/// merged into multi-token spans: if (i, j) and (i+1, j+1) are both linked,
/// the two runs grow together. Components that end up with fewer than two
/// spans are dropped. Group ids follow first occurrence in the text.
std::vector<SpanGroup> group_spans(const LinkSet& links,
                                   const TokenSequence& tokens,
                                   const DistillerConfig& cfg);

/// Replaces every span of group i with the literal "[MSKi]"; all characters
/// outside the spans are preserved. Throws OverlappingGroups.
MaskedArgument apply_masks(const std::string& text, const TokenSequence& tokens,
                           const std::vector<SpanGroup>& groups,
                           const DistillerConfig& cfg = {});

/// Full pipeline: tokenize -> coreference -> embed -> link -> group -> mask.
/// Deterministic for fixed text, config and backends. Either backend may be
/// null: coreference then contributes nothing and similarity links are
/// limited to lemma matches.
MaskedArgument distill(const std::string& text, const DistillerConfig& cfg,
                       EmbeddingBackend* embeddings, CorefBackend* coref);

}  // namespace fallax
