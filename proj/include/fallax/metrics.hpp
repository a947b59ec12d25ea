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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fallax/taxonomy.hpp"

namespace fallax {

using LabelSet = std::set<FallacyId>;

struct LabelCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct ConfusionCounts {
  std::array<LabelCounts, kNumFallacies> per_label{};

  const LabelCounts& operator[](FallacyId id) const {
    return per_label[static_cast<std::size_t>(id)];
  }
};

struct MicroScores {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct ClassScores {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double support_fraction = 0.0;
};

struct MetricsReport {
  double micro_f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  /// Fraction of samples whose predicted set equals the gold set. Unset
  /// when accuracy does not apply (multi-label transfer reports).
  std::optional<double> exact_match_accuracy;
  std::map<FallacyId, ClassScores> per_class;
};

/// Per-label tp/fp/fn pooled over all samples. Pred and gold must have the
/// same length (LengthMismatch otherwise).
ConfusionCounts confusion_counts(const std::vector<LabelSet>& preds,
                                 const std::vector<LabelSet>& golds);

/// Micro-averaged precision/recall/F1 over the pooled counts. Zero
/// denominators yield 0, never NaN.
MicroScores micro_scores(const ConfusionCounts& counts);

/// Fraction of samples with pred set exactly equal to gold set.
double exact_match(const std::vector<LabelSet>& preds,
                   const std::vector<LabelSet>& golds);

/// Per-label binary P/R/F1 plus the label's support fraction (taken from
/// `frequencies`, normally the gold-label frequencies).
std::map<FallacyId, ClassScores> per_class_report(
    const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
    const std::map<FallacyId, double>& frequencies);

/// Convenience bundle: micro scores, exact match (unless
/// `include_accuracy` is false) and the per-class block.
MetricsReport evaluate(const std::vector<LabelSet>& preds,
                       const std::vector<LabelSet>& golds,
                       const std::map<FallacyId, double>& frequencies,
                       bool include_accuracy = true);

/// Markdown rendering: an overall row of F1/P/R(/Acc) percentages to two
/// decimals, then an optional per-class table sorted by support.
std::string render_report_markdown(const MetricsReport& report,
                                   const std::string& title,
                                   bool per_class = true);

}  // namespace fallax
