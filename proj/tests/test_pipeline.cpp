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

#include <doctest.h>

#include <cstdlib>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "fallax/errors.hpp"
#include "fallax/pipeline.hpp"
#include "testutil.hpp"

using namespace fallax;
using namespace fallax::testutil;

namespace {

std::string five_claim_fixture() {
  return R"({"text": "Everyone in town says the bridge plan is right, so it is right.", "labels": ["ad populum"], "split": "test"}
{"text": "The mayor is short, so the budget the mayor wrote must be wrong.", "labels": ["ad hominem"], "split": "test"}
{"text": "Either we build the stadium or the city dies.", "labels": ["false dilemma"], "split": "test"}
{"text": "The rooster crowed and the sun rose, so the rooster raised the sun.", "labels": ["false causality"], "split": "test"}
{"text": "The book is great because it is wonderful.", "labels": ["circular claim"], "split": "test"}
)";
}

}  // namespace

TEST_CASE("run_pipeline writes predictions, report and manifest") {
  TempDir dir("pipeline");
  write_file(dir.file("five.jsonl"), five_claim_fixture());

  RunConfig cfg;
  cfg.dataset_path = dir.file("five.jsonl");
  cfg.schema = Schema::SingleLabel;
  cfg.eval_split = Split::Test;
  cfg.task = "classify";
  cfg.scorer = "lexical";
  cfg.output_dir = dir.file("out");

  const RunResult result = run_pipeline(cfg);
  CHECK(result.n_claims == 5);

  const std::string predictions = read_file(result.predictions_path);
  CHECK(std::count(predictions.begin(), predictions.end(), '\n') == 5);
  // Each record carries 13 scores, a top label and a label set.
  std::istringstream lines(predictions);
  std::string line;
  while (std::getline(lines, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.at("scores").size() == 13);
    CHECK(rec.contains("top_label"));
    CHECK(rec.at("label_set").size() >= 1);
  }

  const std::string report = read_file(result.report_path);
  CHECK(report.find("| F1 | P | R | Acc |") != std::string::npos);

  const auto manifest = nlohmann::json::parse(read_file(result.manifest_path));
  CHECK(manifest.at("config").at("scorer") == "lexical");
  CHECK(manifest.at("config").at("seed") == 0);
  CHECK(manifest.at("backends").contains("scorer"));
  CHECK(manifest.at("n_claims") == 5);
}

TEST_CASE("rerunning the manifest reproduces predictions byte for byte") {
  TempDir dir("pipeline");
  write_file(dir.file("five.jsonl"), five_claim_fixture());

  RunConfig cfg;
  cfg.dataset_path = dir.file("five.jsonl");
  cfg.schema = Schema::SingleLabel;
  cfg.task = "classify";
  cfg.premise_mode = PremiseMode::Structural;
  cfg.hypothesis_mode = HypothesisMode::Structural;
  cfg.scorer = "lexical";
  cfg.embedding_backend = "hashed";
  cfg.output_dir = dir.file("out1");

  const RunResult first = run_pipeline(cfg);

  // Feed the emitted manifest back in as the configuration.
  RunConfig again = RunConfig::from_file(first.manifest_path);
  again.output_dir = dir.file("out2");
  const RunResult second = run_pipeline(again);

  CHECK(read_file(first.predictions_path) ==
        read_file(second.predictions_path));
  CHECK(read_file(first.report_path) == read_file(second.report_path));
}

TEST_CASE("parallel jobs produce the same predictions as serial") {
  TempDir dir("pipeline");
  std::string body;
  for (int i = 0; i < 40; ++i)
    body += R"({"text": "Claim )" + std::to_string(i) +
            R"( repeats claim )" + std::to_string(i) +
            R"( because it repeats.", "labels": ["circular claim"], "split": "test"})" "\n";
  write_file(dir.file("many.jsonl"), body);

  RunConfig cfg;
  cfg.dataset_path = dir.file("many.jsonl");
  cfg.schema = Schema::SingleLabel;
  cfg.task = "classify";
  cfg.scorer = "lexical";
  cfg.jobs = 1;
  cfg.output_dir = dir.file("serial");
  const RunResult serial = run_pipeline(cfg);

  cfg.jobs = 8;
  cfg.output_dir = dir.file("parallel");
  const RunResult parallel = run_pipeline(cfg);

  CHECK(read_file(serial.predictions_path) ==
        read_file(parallel.predictions_path));
}

TEST_CASE("multi-label evaluation omits accuracy") {
  TempDir dir("pipeline");
  write_file(
      dir.file("multi.jsonl"),
      R"({"text": "Two problems at once live here.", "labels": ["ad hominem", "appeal to emotion"], "split": "test"})"
      "\n");
  RunConfig cfg;
  cfg.dataset_path = dir.file("multi.jsonl");
  cfg.schema = Schema::MultiLabel;
  cfg.task = "classify";
  cfg.scorer = "constant:0.6";
  cfg.output_dir = dir.file("out");
  const RunResult result = run_pipeline(cfg);
  CHECK(!result.report.exact_match_accuracy.has_value());
  const std::string report = read_file(result.report_path);
  CHECK(report.find("Acc") == std::string::npos);
  // constant 0.6 > 0.5 threshold: all 13 labels predicted.
  const auto rec = nlohmann::json::parse(
      read_file(result.predictions_path).substr(
          0, read_file(result.predictions_path).find('\n')));
  CHECK(rec.at("label_set").size() == 13);
}

TEST_CASE("baseline tasks run through the pipeline") {
  TempDir dir("pipeline");
  write_file(dir.file("five.jsonl"), five_claim_fixture());

  RunConfig cfg;
  cfg.dataset_path = dir.file("five.jsonl");
  cfg.schema = Schema::SingleLabel;
  cfg.task = "baseline";
  cfg.seed = 1;

  SUBCASE("random is reproducible across runs") {
    cfg.baseline = "random";
    cfg.output_dir = dir.file("r1");
    const RunResult a = run_pipeline(cfg);
    cfg.output_dir = dir.file("r2");
    const RunResult b = run_pipeline(cfg);
    CHECK(read_file(a.predictions_path) == read_file(b.predictions_path));
  }

  SUBCASE("majority uses the train split of the training file") {
    write_file(dir.file("train.jsonl"),
               R"({"text": "a", "labels": ["faulty generalization"], "split": "train"}
{"text": "b", "labels": ["faulty generalization"], "split": "train"}
{"text": "c", "labels": ["ad hominem"], "split": "train"}
)");
    cfg.baseline = "majority";
    cfg.train_path = dir.file("train.jsonl");
    cfg.output_dir = dir.file("m");
    const RunResult result = run_pipeline(cfg);
    const std::string predictions = read_file(result.predictions_path);
    std::istringstream lines(predictions);
    std::string line;
    while (std::getline(lines, line)) {
      const auto rec = nlohmann::json::parse(line);
      CHECK(rec.at("top_label") == "faulty_generalization");
    }
  }

  SUBCASE("perplexity with the hash LM is deterministic") {
    cfg.baseline = "perplexity";
    cfg.lm_backend = "hash";
    cfg.output_dir = dir.file("p1");
    const RunResult a = run_pipeline(cfg);
    cfg.output_dir = dir.file("p2");
    const RunResult b = run_pipeline(cfg);
    CHECK(read_file(a.predictions_path) == read_file(b.predictions_path));
  }

  SUBCASE("prompt baseline maps completions through the taxonomy") {
    cfg.baseline = "prompt";
    cfg.completion_backend = "static:Ad Hominem";
    cfg.output_dir = dir.file("c");
    const RunResult result = run_pipeline(cfg);
    std::istringstream lines(read_file(result.predictions_path));
    std::string line;
    while (std::getline(lines, line)) {
      const auto rec = nlohmann::json::parse(line);
      CHECK(rec.at("top_label") == "ad_hominem");
    }
  }
}

TEST_CASE("stage failures name the stage") {
  RunConfig cfg;
  cfg.dataset_path = "/nonexistent/nope.jsonl";
  try {
    run_pipeline(cfg);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage load") != std::string::npos);
  }

  TempDir dir("pipeline");
  write_file(dir.file("five.jsonl"), five_claim_fixture());
  cfg.dataset_path = dir.file("five.jsonl");
  cfg.scorer = "no-such-scorer";
  cfg.output_dir = dir.file("out");
  try {
    run_pipeline(cfg);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage backends") != std::string::npos);
  }

  // Mid-loop failures report the stage and the record index.
  cfg.scorer = "fixture:" + dir.file("empty_scores.jsonl");
  write_file(dir.file("empty_scores.jsonl"), "");
  try {
    run_pipeline(cfg);
    FAIL("expected Error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("stage predict") != std::string::npos);
    CHECK(what.find("record 0") != std::string::npos);
    CHECK(what.find("label 0") != std::string::npos);
  }
}

TEST_CASE("RunConfig serializes and parses with exact field names") {
  RunConfig cfg;
  cfg.dataset_path = "data/logic.jsonl";
  cfg.schema = Schema::MultiLabel;
  cfg.eval_split = Split::Dev;
  cfg.premise_mode = PremiseMode::Structural;
  cfg.hypothesis_mode = HypothesisMode::Structural;
  cfg.scorer = "constant:0.25";
  cfg.decision_threshold = 0.4;
  cfg.similarity_threshold = 0.8;
  cfg.seed = 7;
  cfg.jobs = 3;

  const RunConfig parsed = RunConfig::from_json_text(cfg.to_json_text());
  CHECK(parsed.dataset_path == cfg.dataset_path);
  CHECK(parsed.schema == cfg.schema);
  CHECK(parsed.eval_split == cfg.eval_split);
  CHECK(parsed.premise_mode == cfg.premise_mode);
  CHECK(parsed.hypothesis_mode == cfg.hypothesis_mode);
  CHECK(parsed.scorer == cfg.scorer);
  CHECK(parsed.decision_threshold == cfg.decision_threshold);
  CHECK(parsed.similarity_threshold == cfg.similarity_threshold);
  CHECK(parsed.seed == cfg.seed);
  CHECK(parsed.jobs == cfg.jobs);

  CHECK_THROWS_AS(RunConfig::from_json_text("{"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text("{}"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text(
                      R"({"dataset_path": "x", "decision_threshold": 1.5})"),
                  ConfigError);
}

TEST_CASE("backend credential comes from the environment, unset means none") {
  unsetenv(kCredentialEnvVar);
  CHECK(!backend_credential().has_value());
  setenv(kCredentialEnvVar, "", 1);
  CHECK(!backend_credential().has_value());
  setenv(kCredentialEnvVar, "token-123", 1);
  REQUIRE(backend_credential().has_value());
  CHECK(*backend_credential() == "token-123");
  unsetenv(kCredentialEnvVar);
}

TEST_CASE("backend registry rejects unknown names") {
  CHECK_THROWS_AS(make_embedding_backend("warp-drive"), BackendUnavailable);
  CHECK_THROWS_AS(make_scorer("warp-drive"), BackendUnavailable);
  CHECK_THROWS_AS(make_lm_backend("warp-drive"), BackendUnavailable);
  CHECK_THROWS_AS(make_completion_backend("warp-drive"), BackendUnavailable);
  CHECK_THROWS_AS(make_coref_backend("warp-drive"), BackendUnavailable);
  CHECK(make_embedding_backend("hashed")->thread_safe());
  CHECK(make_scorer("constant:0.5")->score("a", "b") == 0.5);
}
