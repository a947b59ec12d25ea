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

#include "fallax/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "fallax/errors.hpp"

namespace fallax {

namespace {

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double f1_of(double p, double r) { return safe_div(2.0 * p * r, p + r); }

std::string pct(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << x * 100.0;
  return out.str();
}

}  // namespace

ConfusionCounts confusion_counts(const std::vector<LabelSet>& preds,
                                 const std::vector<LabelSet>& golds) {
  if (preds.size() != golds.size())
    throw LengthMismatch("confusion_counts: " + std::to_string(preds.size()) +
                         " predictions vs " + std::to_string(golds.size()) +
                         " golds");
  ConfusionCounts counts;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t l = 0; l < kNumFallacies; ++l) {
      const FallacyId id = static_cast<FallacyId>(l);
      const bool in_pred = preds[i].count(id) > 0;
      const bool in_gold = golds[i].count(id) > 0;
      if (in_pred && in_gold)
        ++counts.per_label[l].tp;
      else if (in_pred)
        ++counts.per_label[l].fp;
      else if (in_gold)
        ++counts.per_label[l].fn;
    }
  }
  return counts;
}

MicroScores micro_scores(const ConfusionCounts& counts) {
  double tp = 0, fp = 0, fn = 0;
  for (const auto& c : counts.per_label) {
    tp += static_cast<double>(c.tp);
    fp += static_cast<double>(c.fp);
    fn += static_cast<double>(c.fn);
  }
  MicroScores s;
  s.precision = safe_div(tp, tp + fp);
  s.recall = safe_div(tp, tp + fn);
  s.f1 = f1_of(s.precision, s.recall);
  return s;
}

double exact_match(const std::vector<LabelSet>& preds,
                   const std::vector<LabelSet>& golds) {
  if (preds.size() != golds.size())
    throw LengthMismatch("exact_match: length mismatch");
  if (preds.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i)
    if (preds[i] == golds[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

std::map<FallacyId, ClassScores> per_class_report(
    const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
    const std::map<FallacyId, double>& frequencies) {
  const ConfusionCounts counts = confusion_counts(preds, golds);
  std::map<FallacyId, ClassScores> report;
  for (std::size_t l = 0; l < kNumFallacies; ++l) {
    const FallacyId id = static_cast<FallacyId>(l);
    const auto& c = counts.per_label[l];
    ClassScores s;
    s.precision = safe_div(static_cast<double>(c.tp),
                           static_cast<double>(c.tp + c.fp));
    s.recall = safe_div(static_cast<double>(c.tp),
                        static_cast<double>(c.tp + c.fn));
    s.f1 = f1_of(s.precision, s.recall);
    auto it = frequencies.find(id);
    s.support_fraction = it == frequencies.end() ? 0.0 : it->second;
    report[id] = s;
  }
  return report;
}

MetricsReport evaluate(const std::vector<LabelSet>& preds,
                       const std::vector<LabelSet>& golds,
                       const std::map<FallacyId, double>& frequencies,
                       bool include_accuracy) {
  MetricsReport report;
  const MicroScores micro = micro_scores(confusion_counts(preds, golds));
  report.micro_f1 = micro.f1;
  report.precision = micro.precision;
  report.recall = micro.recall;
  if (include_accuracy) report.exact_match_accuracy = exact_match(preds, golds);
  report.per_class = per_class_report(preds, golds, frequencies);
  return report;
}

std::string render_report_markdown(const MetricsReport& report,
                                   const std::string& title, bool per_class) {
  std::ostringstream out;
  out << "# " << title << "\n\n";
  if (report.exact_match_accuracy) {
    out << "| F1 | P | R | Acc |\n|---|---|---|---|\n";
    out << "| " << pct(report.micro_f1) << " | " << pct(report.precision)
        << " | " << pct(report.recall) << " | "
        << pct(*report.exact_match_accuracy) << " |\n";
  } else {
    out << "| F1 | P | R |\n|---|---|---|\n";
    out << "| " << pct(report.micro_f1) << " | " << pct(report.precision)
        << " | " << pct(report.recall) << " |\n";
  }
  if (per_class && !report.per_class.empty()) {
    out << "\n## Per class\n\n";
    out << "| Class | F1 | P | R | Freq. |\n|---|---|---|---|---|\n";
    std::vector<std::pair<FallacyId, ClassScores>> rows(
        report.per_class.begin(), report.per_class.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.support_fraction >
                              b.second.support_fraction;
                     });
    for (const auto& [id, s] : rows) {
      out << "| " << display_name(id) << " | " << pct(s.f1) << " | "
          << pct(s.precision) << " | " << pct(s.recall) << " | "
          << pct(s.support_fraction) << " |\n";
    }
  }
  return out.str();
}

}  // namespace fallax
