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

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fallax/distiller.hpp"
#include "fallax/text.hpp"

namespace fallax::testutil {

/// Deterministic RNG for fixtures (mt19937_64 is fine inside tests).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t pick(std::size_t n) { return n ? next() % n : 0; }
  double uniform() {
    return static_cast<double>(next() >> 11) /
           static_cast<double>(1ull << 53);
  }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> random_unit_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = rng.uniform() * 2.0 - 1.0;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    v[0] = 1.0;
    return v;
  }
  for (auto& x : v) x /= norm;
  return v;
}

struct SyntheticFixture {
  TokenSequence seq;
  TokenVectors vectors;
};

/// Random token sequence with distinct surfaces/lemmas (so the lemma
/// shortcut stays inert), random stopword flags, and unit vectors that are
/// sometimes exact copies of earlier ones -- including aligned adjacent
/// copies, which exercise the run-merge path.
inline SyntheticFixture random_fixture(Rng& rng, std::size_t max_tokens,
                                       std::size_t dim = 4) {
  SyntheticFixture fx;
  const std::size_t n = 1 + rng.pick(max_tokens);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    Token tok;
    tok.surface = "w" + std::to_string(i) + "q";
    tok.lemma = tok.surface;
    tok.is_stopword = rng.chance(0.2);
    tok.char_start = text.size();
    text += tok.surface;
    tok.char_end = text.size();
    text += ' ';
    fx.seq.tokens.push_back(tok);
  }
  if (!text.empty()) text.pop_back();
  fx.seq.text = text;

  std::size_t i = 0;
  while (i < n) {
    const double roll = rng.uniform();
    if (i >= 2 && i + 1 < n && roll < 0.15) {
      // Copy an earlier adjacent pair to a fresh adjacent position; this is
      // what makes the aligned run-merge fire.
      const std::size_t a = rng.pick(i - 1);
      fx.vectors.push_back(fx.vectors[a]);
      fx.vectors.push_back(fx.vectors[a + 1]);
      i += 2;
    } else if (i >= 1 && roll < 0.35) {
      fx.vectors.push_back(fx.vectors[rng.pick(i)]);
      ++i;
    } else {
      fx.vectors.push_back(random_unit_vector(rng, dim));
      ++i;
    }
  }
  return fx;
}

/// Unique scratch directory under the build tree; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("fallax_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

inline std::string source_path(const std::string& relative) {
  return std::string(FALLAX_SOURCE_DIR) + "/" + relative;
}

}  // namespace fallax::testutil
