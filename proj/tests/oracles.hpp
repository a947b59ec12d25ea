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

// Brute-force reference implementations the library is checked against.
// These deliberately use different data structures than the library code
// (adjacency matrices and transitive closure instead of union-find, plain
// per-sample loops instead of pooled counters). The cosine accumulation
// order matches the library so that threshold comparisons agree bitwise.

#pragma once

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "fallax/distiller.hpp"
#include "fallax/metrics.hpp"

namespace fallax::oracle {

inline double cosine(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// All-pairs enumeration of links: cosine above threshold, equal lemmas,
/// and pairs covered by a shared coreference chain.
inline std::set<std::pair<std::size_t, std::size_t>> links(
    const TokenSequence& seq, const TokenVectors& vectors,
    const DistillerConfig& cfg, const CorefChains& coref = {}) {
  const std::size_t n = seq.size();
  std::set<std::pair<std::size_t, std::size_t>> out;
  auto content = [&seq](std::size_t t) {
    return !seq.tokens[t].is_punct && !seq.tokens[t].is_stopword;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!content(i) || !content(j)) continue;
      if (cosine(vectors[i], vectors[j]) > cfg.similarity_threshold)
        out.insert({i, j});
      if (!seq.tokens[i].lemma.empty() &&
          seq.tokens[i].lemma == seq.tokens[j].lemma)
        out.insert({i, j});
    }
  }
  for (const auto& chain : coref.chains) {
    std::vector<std::size_t> members;
    for (const auto& m : chain)
      for (std::size_t t = m.begin; t < m.end && t < n; ++t)
        if (content(t)) members.push_back(t);
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = 0; b < members.size(); ++b)
        if (members[a] < members[b]) out.insert({members[a], members[b]});
  }
  return out;
}

/// Grouping via adjacency matrix + transitive closure. The edge set is the
/// base links plus, for every aligned pair of links (i,j) and (i+1,j+1),
/// the edges (i,i+1) and (j,j+1) -- evaluated against base links only.
inline std::vector<std::vector<TokenSpan>> groups(
    const std::set<std::pair<std::size_t, std::size_t>>& base, std::size_t n,
    bool merge_contiguous) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  auto connect = [&adj](std::size_t a, std::size_t b) {
    adj[a][b] = adj[b][a] = true;
  };
  for (const auto& [i, j] : base) connect(i, j);
  if (merge_contiguous) {
    for (const auto& [i, j] : base) {
      if (i + 1 < n && j + 1 < n && base.count({i + 1, j + 1})) {
        connect(i, i + 1);
        connect(j, j + 1);
      }
    }
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (adj[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (adj[k][j]) adj[i][j] = true;

  std::vector<bool> linked(n, false);
  for (const auto& [i, j] : base) linked[i] = linked[j] = true;
  // The merge edges only touch tokens adjacent to linked ones; collect all
  // tokens reachable from any linked token.
  std::vector<bool> seen(n, false);
  std::vector<std::vector<TokenSpan>> result;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> component;
    for (std::size_t t = 0; t < n; ++t)
      if (t == s || adj[s][t]) component.push_back(t);
    bool any_linked = false;
    for (std::size_t t : component) any_linked = any_linked || linked[t];
    if (!any_linked || component.size() < 2) continue;
    for (std::size_t t : component) seen[t] = true;

    std::vector<TokenSpan> spans;
    std::size_t run_start = component.front();
    std::size_t prev = component.front();
    for (std::size_t k = 1; k < component.size(); ++k) {
      if (component[k] != prev + 1) {
        spans.push_back({run_start, prev + 1});
        run_start = component[k];
      }
      prev = component[k];
    }
    spans.push_back({run_start, prev + 1});
    if (spans.size() >= 2) result.push_back(std::move(spans));
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) {
              return a.front().begin < b.front().begin;
            });
  return result;
}

/// From-scratch micro metrics over label sets.
struct MicroResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double exact = 0.0;
};

inline MicroResult micro(const std::vector<LabelSet>& preds,
                         const std::vector<LabelSet>& golds) {
  double tp = 0.0, fp = 0.0, fn = 0.0, exact_hits = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (FallacyId id : preds[i]) {
      if (golds[i].count(id))
        tp += 1.0;
      else
        fp += 1.0;
    }
    for (FallacyId id : golds[i])
      if (!preds[i].count(id)) fn += 1.0;
    if (preds[i] == golds[i]) exact_hits += 1.0;
  }
  MicroResult r;
  r.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
  r.recall = (tp + fn) > 0.0 ? tp / (tp + fn) : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.exact = preds.empty() ? 0.0 : exact_hits / static_cast<double>(preds.size());
  return r;
}

/// Per-label binary scores computed sample by sample.
inline std::map<FallacyId, std::array<double, 3>> per_class(
    const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds) {
  std::map<FallacyId, std::array<double, 3>> out;  // id -> {p, r, f1}
  for (std::size_t l = 0; l < kNumFallacies; ++l) {
    const FallacyId id = static_cast<FallacyId>(l);
    double tp = 0.0, fp = 0.0, fn = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const bool p = preds[i].count(id) > 0;
      const bool g = golds[i].count(id) > 0;
      if (p && g) tp += 1.0;
      if (p && !g) fp += 1.0;
      if (!p && g) fn += 1.0;
    }
    const double precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
    const double recall = (tp + fn) > 0.0 ? tp / (tp + fn) : 0.0;
    const double f1 = (precision + recall) > 0.0
                          ? 2.0 * precision * recall / (precision + recall)
                          : 0.0;
    out[id] = {precision, recall, f1};
  }
  return out;
}

}  // namespace fallax::oracle
