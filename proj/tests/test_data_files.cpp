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

// Checks against the corpora shipped under data/.

#include <doctest.h>

#include <cmath>

#include "fallax/baselines.hpp"
#include "fallax/corpus.hpp"
#include "fallax/pipeline.hpp"
#include "testutil.hpp"

using namespace fallax;
using namespace fallax::testutil;

TEST_CASE("shipped single-label corpus: sizes, splits and class balance") {
  const Dataset logic =
      load_dataset(source_path("data/logic.jsonl"), Schema::SingleLabel);
  CHECK(logic.size() == 2449);
  const auto sizes = logic.split_sizes();
  CHECK(sizes[0] == 1849);
  CHECK(sizes[1] == 300);
  CHECK(sizes[2] == 300);

  const auto freqs = label_frequencies(logic);
  CHECK(freqs.at(FallacyId::FaultyGeneralization) ==
        doctest::Approx(0.1801).epsilon(0.005));
  // Faulty generalization is the largest class overall and in train.
  for (const auto& [id, f] : freqs)
    CHECK(f <= freqs.at(FallacyId::FaultyGeneralization));

  Dataset train;
  train.schema = Schema::SingleLabel;
  train.claims = logic.split_claims(Split::Train);
  CHECK(majority_baseline(train) == FallacyId::FaultyGeneralization);
}

TEST_CASE("shipped multi-label corpus: sizes, splits and label fractions") {
  const Dataset climate =
      load_dataset(source_path("data/logicclimate.jsonl"), Schema::MultiLabel);
  CHECK(climate.size() == 1079);
  const auto sizes = climate.split_sizes();
  CHECK(sizes[0] == 680);
  CHECK(sizes[1] == 219);
  CHECK(sizes[2] == 180);

  const auto freqs = label_frequencies(climate);
  CHECK(std::abs(freqs.at(FallacyId::IntentionalFallacy) - 0.2558) < 0.01);
  CHECK(std::abs(freqs.at(FallacyId::AppealToEmotion) - 0.1137) < 0.01);
  CHECK(std::abs(freqs.at(FallacyId::CircularClaim) - 0.0051) < 0.01);

  // Genuinely multi-label: some claims carry two labels.
  std::size_t multi = 0;
  for (const auto& claim : climate.claims)
    if (claim.labels.size() > 1) ++multi;
  CHECK(multi > 0);
}

TEST_CASE("transfer run: trained-source majority on the multi-label set "
          "reports without accuracy") {
  TempDir dir("transfer");
  RunConfig cfg;
  cfg.dataset_path = source_path("data/logicclimate.jsonl");
  cfg.schema = Schema::MultiLabel;
  cfg.task = "baseline";
  cfg.baseline = "majority";
  cfg.train_path = source_path("data/logic.jsonl");
  cfg.output_dir = dir.file("out");

  const RunResult result = run_pipeline(cfg);
  CHECK(result.n_claims == 1079);
  CHECK(!result.report.exact_match_accuracy.has_value());
  const std::string report = read_file(result.report_path);
  CHECK(report.find("Acc") == std::string::npos);
}
