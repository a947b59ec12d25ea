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

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fallax/baselines.hpp"
#include "fallax/classifier.hpp"
#include "fallax/corpus.hpp"
#include "fallax/distiller.hpp"
#include "fallax/metrics.hpp"

namespace fallax {

/// Everything one evaluation run needs; serializes to/from JSON so a run's
/// manifest can reproduce it exactly.
struct RunConfig {
  std::string dataset_path;
  Schema schema = Schema::SingleLabel;
  std::optional<Split> eval_split;  // nullopt = whole dataset

  /// "classify" or "baseline".
  std::string task = "classify";

  // classify task
  PremiseMode premise_mode = PremiseMode::Raw;
  HypothesisMode hypothesis_mode = HypothesisMode::Raw;
  std::string scorer = "lexical";
  double decision_threshold = 0.5;

  // baseline task
  std::string baseline;  // random | majority | perplexity | prompt
  std::string train_path;  // majority baseline's training data
  std::string lm_backend = "hash";
  std::string completion_backend;

  // distiller (structural premise mode)
  double similarity_threshold = 0.7;
  std::string embedding_backend = "hashed";
  std::string coref_backend = "none";

  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output_dir = "out";

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
  std::string to_json_text() const;
};

struct RunResult {
  MetricsReport report;
  std::string predictions_path;
  std::string report_path;
  std::string manifest_path;
  std::size_t n_claims = 0;
};

/// Backend factories. Names: embeddings "hashed" | "none" |
/// "fixture:<path>"; coreference "none" | "fixture:<path>"; scorers
/// "lexical" | "constant:<p>" | "fixture:<path>"; language models "hash" |
/// "fixture:<path>"; completions "fixture:<path>" | "static:<label>".
/// Unknown names raise BackendUnavailable.
std::unique_ptr<EmbeddingBackend> make_embedding_backend(const std::string& name);
std::unique_ptr<CorefBackend> make_coref_backend(const std::string& name);
std::unique_ptr<EntailmentScorer> make_scorer(const std::string& name);
std::unique_ptr<LmBackend> make_lm_backend(const std::string& name);
std::unique_ptr<CompletionBackend> make_completion_backend(
    const std::string& name);

/// Environment variable holding a credential forwarded to backends that
/// need one. Its value is never logged and never written to manifests.
inline constexpr const char* kCredentialEnvVar = "FALLAX_BACKEND_CREDENTIAL";

/// Reads kCredentialEnvVar; nullopt when unset or empty. Hosted-service
/// backends call this; the bundled offline backends ignore it.
std::optional<std::string> backend_credential();

/// Applies fn to indices [0, count) on up to `jobs` threads and returns the
/// results in input order. Exceptions are rethrown from the lowest failing
/// index, so the outcome does not depend on thread scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int jobs,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> results(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = count;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

/// Full run: load -> (distill) -> classify or baseline -> evaluate. Writes
/// predictions.jsonl, report.md and manifest.json under cfg.output_dir.
/// A stage failure surfaces as an Error naming the stage and record index.
RunResult run_pipeline(const RunConfig& cfg);

}  // namespace fallax
