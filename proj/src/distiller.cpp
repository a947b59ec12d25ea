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

#include "fallax/distiller.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "fallax/errors.hpp"

namespace fallax {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

bool linkable(const Token& t) { return !t.is_punct && !t.is_stopword; }

// Union-find over token indices.
class Dsu {
 public:
  explicit Dsu(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TokenVectors HashedEmbeddingBackend::embed(const TokenSequence& tokens) {
  TokenVectors out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens.tokens) {
    std::uint64_t state = fnv1a64(to_lower(tok.surface));
    std::vector<double> v(dim_);
    double norm = 0.0;
    for (auto& x : v) {
      x = static_cast<double>(splitmix64(state) >> 11) /
              static_cast<double>(1ull << 52) -
          1.0;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      v[0] = 1.0;
    } else {
      for (auto& x : v) x /= norm;
    }
    out.push_back(std::move(v));
  }
  return out;
}

TokenVectors NullEmbeddingBackend::embed(const TokenSequence& tokens) {
  return TokenVectors(tokens.size(), std::vector<double>{0.0});
}

std::unique_ptr<FixtureEmbeddingBackend> FixtureEmbeddingBackend::from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding fixture: " + path);
  TokenVectors vectors;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> v;
    double x;
    while (ls >> x) v.push_back(x);
    if (!v.empty()) vectors.push_back(std::move(v));
  }
  return std::make_unique<FixtureEmbeddingBackend>(std::move(vectors));
}

TokenVectors FixtureEmbeddingBackend::embed(const TokenSequence& tokens) {
  if (cursor_ + tokens.size() > vectors_.size())
    throw DimensionMismatch(
        "embedding fixture exhausted: need " + std::to_string(tokens.size()) +
        " vectors, have " + std::to_string(vectors_.size() - cursor_));
  TokenVectors out(vectors_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                   vectors_.begin() +
                       static_cast<std::ptrdiff_t>(cursor_ + tokens.size()));
  cursor_ += tokens.size();
  return out;
}

std::unique_ptr<FixtureCorefBackend> FixtureCorefBackend::from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coreference fixture: " + path);
  std::vector<CorefChains> per_call;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("coref fixture: ") + e.what(), lineno);
    }
    CorefChains chains;
    for (const auto& chain : arr) {
      std::vector<TokenSpan> mentions;
      for (const auto& span : chain)
        mentions.push_back({span.at(0).get<std::size_t>(),
                            span.at(1).get<std::size_t>()});
      chains.chains.push_back(std::move(mentions));
    }
    per_call.push_back(std::move(chains));
  }
  return std::make_unique<FixtureCorefBackend>(std::move(per_call));
}

CorefChains FixtureCorefBackend::resolve(const TokenSequence&) {
  if (cursor_ >= per_call_.size())
    throw BackendUnavailable("coreference fixture exhausted");
  return per_call_[cursor_++];
}

CorefChains resolve_coreference(const TokenSequence& tokens,
                                CorefBackend* backend) {
  if (backend == nullptr) return {};
  CorefChains chains = backend->resolve(tokens);
  for (const auto& chain : chains.chains) {
    std::set<TokenSpan> distinct;
    for (const auto& m : chain) {
      if (m.begin >= m.end || m.end > tokens.size())
        throw ParseError("coreference mention out of range");
      if (!distinct.insert(m).second)
        throw ParseError("duplicate mention within a coreference chain");
    }
  }
  return chains;
}

LinkSet link_similar(const TokenSequence& tokens, const TokenVectors& vectors,
                     const DistillerConfig& cfg, const CorefChains& coref) {
  if (cfg.similarity_threshold <= 0.0 || cfg.similarity_threshold > 1.0)
    throw ConfigError("similarity threshold must lie in (0, 1]");
  const std::size_t n = tokens.size();
  if (vectors.size() != n)
    throw DimensionMismatch("have " + std::to_string(vectors.size()) +
                            " vectors for " + std::to_string(n) + " tokens");
  for (std::size_t i = 0; i < n; ++i) {
    if (!vectors[i].empty() && vectors[i].size() != vectors[0].size())
      throw DimensionMismatch("inconsistent vector dimensions");
    for (double x : vectors[i])
      if (!std::isfinite(x))
        throw DimensionMismatch("non-finite vector component at token " +
                                std::to_string(i));
  }

  LinkSet links;
  auto add = [&links](std::size_t i, std::size_t j, double sim) {
    auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
    links.pairs.insert(key);
    auto [it, inserted] = links.similarity.emplace(key, sim);
    if (!inserted) it->second = std::max(it->second, sim);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!linkable(tokens.tokens[i])) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!linkable(tokens.tokens[j])) continue;
      const double sim = cosine(vectors[i], vectors[j]);
      if (sim > cfg.similarity_threshold) add(i, j, sim);
      // Lemma identity is a paraphrase by definition; link it outright.
      if (!tokens.tokens[i].lemma.empty() &&
          tokens.tokens[i].lemma == tokens.tokens[j].lemma)
        add(i, j, 1.0);
    }
  }

  // Mentions of one coreference chain are mandatory links.
  for (const auto& chain : coref.chains) {
    std::vector<std::size_t> members;
    for (const auto& mention : chain)
      for (std::size_t t = mention.begin; t < mention.end && t < n; ++t)
        if (linkable(tokens.tokens[t])) members.push_back(t);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        add(members[a], members[b], 1.0);
  }
  return links;
}

std::vector<SpanGroup> group_spans(const LinkSet& links,
                                   const TokenSequence& tokens,
                                   const DistillerConfig& cfg) {
  const std::size_t n = tokens.size();
  for (const auto& [i, j] : links.pairs)
    if (j >= n || i == j)
      throw DimensionMismatch("link pair out of range");

  Dsu dsu(n);
  for (const auto& [i, j] : links.pairs) dsu.unite(i, j);

  // Aligned adjacent links pull both runs into one group: linked (i, j) and
  // (i+1, j+1) means "i i+1" and "j j+1" are parallel phrases.
  if (cfg.merge_contiguous) {
    for (const auto& [i, j] : links.pairs) {
      if (links.contains(i + 1, j + 1)) {
        dsu.unite(i, i + 1);
        dsu.unite(j, j + 1);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> components;
  for (const auto& [i, j] : links.pairs) {
    components[dsu.find(i)];
    components[dsu.find(j)];
  }
  for (std::size_t t = 0; t < n; ++t) {
    auto it = components.find(dsu.find(t));
    if (it != components.end()) it->second.push_back(t);
  }

  std::vector<SpanGroup> groups;
  for (auto& [root, members] : components) {
    // members is sorted by construction; maximal consecutive runs -> spans.
    SpanGroup group;
    std::size_t run_start = members.front();
    std::size_t prev = members.front();
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (members[k] != prev + 1) {
        group.spans.push_back({run_start, prev + 1});
        run_start = members[k];
      }
      prev = members[k];
    }
    group.spans.push_back({run_start, prev + 1});
    // A single leftover span carries no structural signal; leave it unmasked.
    if (group.spans.size() >= 2) groups.push_back(std::move(group));
  }

  std::sort(groups.begin(), groups.end(),
            [](const SpanGroup& a, const SpanGroup& b) {
              return a.spans.front().begin < b.spans.front().begin;
            });
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g].group_id = g + 1;
  return groups;
}

MaskedArgument apply_masks(const std::string& text, const TokenSequence& tokens,
                           const std::vector<SpanGroup>& groups,
                           const DistillerConfig& cfg) {
  struct Replacement {
    std::size_t char_begin;
    std::size_t char_end;
    std::size_t group_id;
  };
  std::vector<Replacement> reps;
  for (const auto& group : groups) {
    for (const auto& span : group.spans) {
      if (span.begin >= span.end || span.end > tokens.size())
        throw OverlappingGroups("span out of token range");
      reps.push_back({tokens.tokens[span.begin].char_start,
                      tokens.tokens[span.end - 1].char_end, group.group_id});
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const Replacement& a, const Replacement& b) {
              return a.char_begin < b.char_begin;
            });
  for (std::size_t k = 1; k < reps.size(); ++k)
    if (reps[k].char_begin < reps[k - 1].char_end)
      throw OverlappingGroups("span groups overlap in the text");

  std::string masked;
  masked.reserve(text.size());
  std::size_t pos = 0;
  for (const auto& rep : reps) {
    masked.append(text, pos, rep.char_begin - pos);
    masked += "[MSK" + std::to_string(rep.group_id) + "]";
    pos = rep.char_end;
  }
  masked.append(text, pos, std::string::npos);

  MaskedArgument out;
  out.original_text = text;
  out.masked_text = std::move(masked);
  out.groups = groups;
  out.config_used = cfg;
  return out;
}

MaskedArgument distill(const std::string& text, const DistillerConfig& cfg,
                       EmbeddingBackend* embeddings, CorefBackend* coref) {
  const TokenSequence seq = tokenize(text, cfg.stopword_list);
  const CorefChains chains = resolve_coreference(seq, coref);
  const TokenVectors vectors =
      embeddings ? embeddings->embed(seq)
                 : TokenVectors(seq.size(), std::vector<double>{0.0});
  const LinkSet links = link_similar(seq, vectors, cfg, chains);
  const std::vector<SpanGroup> groups = group_spans(links, seq, cfg);
  return apply_masks(text, seq, groups, cfg);
}

}  // namespace fallax
