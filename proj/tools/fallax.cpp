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

// Command-line entry point: taxonomy, corpus, distill, hypothesis,
// classify, baseline, eval and run subcommands.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fallax/baselines.hpp"
#include "fallax/classifier.hpp"
#include "fallax/corpus.hpp"
#include "fallax/distiller.hpp"
#include "fallax/errors.hpp"
#include "fallax/hypothesis.hpp"
#include "fallax/metrics.hpp"
#include "fallax/pipeline.hpp"
#include "fallax/version.hpp"

namespace {

using nlohmann::json;
using namespace fallax;

Schema parse_schema(const std::string& s) {
  if (s == "single" || s == "single_label") return Schema::SingleLabel;
  if (s == "multi" || s == "multi_label") return Schema::MultiLabel;
  throw ConfigError("unknown schema: \"" + s + "\" (single|multi)");
}

std::optional<Split> parse_split_opt(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  return parse_split(s);
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
}

// distill accepts dataset records (.jsonl/.csv) or plain text lines.
std::vector<std::string> read_texts(const std::string& path) {
  std::vector<std::string> texts;
  if (path.ends_with(".jsonl") || path.ends_with(".csv")) {
    Dataset ds = load_dataset(path, Schema::MultiLabel);
    for (const auto& claim : ds.claims) texts.push_back(claim.text);
    return texts;
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) texts.push_back(line);
  }
  return texts;
}

int cmd_taxonomy_list() {
  for (const auto& t : Taxonomy::builtin().canonical_types()) {
    std::cout << t.id_str << "\t" << t.display_name << "\t"
              << t.logical_form.text << "\n";
  }
  return 0;
}

int cmd_taxonomy_normalize(const std::string& raw) {
  const auto& t = Taxonomy::builtin().normalize_label(raw);
  std::cout << t.id_str << "\t" << t.display_name << "\n";
  return 0;
}

int cmd_corpus_stats(const std::string& path, const std::string& schema,
                     const std::string& split) {
  Dataset ds = load_dataset(path, parse_schema(schema));
  auto print = [&ds](const char* name, std::optional<Split> s) {
    const CorpusStats st = compute_stats(ds, s);
    std::cout << name << "\t" << st.n_samples << "\t" << st.n_sentences << "\t"
              << st.n_tokens << "\t" << st.vocab_size << "\n";
  };
  std::cout << "split\tsamples\tsentences\ttokens\tvocab\n";
  if (auto s = parse_split_opt(split)) {
    print(split_name(*s), s);
  } else {
    print("all", std::nullopt);
    print("train", Split::Train);
    print("dev", Split::Dev);
    print("test", Split::Test);
  }
  return 0;
}

int cmd_corpus_freq(const std::string& path, const std::string& schema) {
  Dataset ds = load_dataset(path, parse_schema(schema));
  const auto freqs = label_frequencies(ds);
  std::vector<std::pair<FallacyId, double>> rows(freqs.begin(), freqs.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  for (const auto& [id, f] : rows)
    std::cout << display_name(id) << "\t" << f * 100.0 << "%\n";
  return 0;
}

int cmd_corpus_validate(const std::string& path, const std::string& schema) {
  Dataset ds = load_dataset(path, parse_schema(schema));
  const auto sizes = ds.split_sizes();
  std::cout << "ok: " << ds.size() << " claims (train " << sizes[0] << ", dev "
            << sizes[1] << ", test " << sizes[2] << ")\n";
  return 0;
}

int cmd_distill(const std::string& in_path, const std::string& out_path,
                double threshold, const std::string& backend,
                const std::string& coref_name) {
  DistillerConfig cfg;
  cfg.similarity_threshold = threshold;
  auto embeddings = make_embedding_backend(backend);
  auto coref = make_coref_backend(coref_name);

  std::ostringstream out;
  for (const auto& text : read_texts(in_path)) {
    const MaskedArgument masked =
        distill(text, cfg, embeddings.get(), coref.get());
    json rec;
    rec["original_text"] = masked.original_text;
    rec["masked_text"] = masked.masked_text;
    json groups = json::array();
    for (const auto& g : masked.groups) {
      json spans = json::array();
      for (const auto& s : g.spans) spans.push_back({s.begin, s.end});
      groups.push_back({{"group_id", g.group_id}, {"spans", spans}});
    }
    rec["groups"] = groups;
    out << rec.dump() << '\n';
  }
  write_text(out_path, out.str());
  return 0;
}

int cmd_hypothesis_show(const std::string& type, const std::string& mode) {
  const auto& t = Taxonomy::builtin().normalize_label(type);
  std::cout << build_hypothesis(t, parse_hypothesis_mode(mode)) << "\n";
  return 0;
}

int run_config_and_report(RunConfig cfg) {
  const RunResult result = run_pipeline(cfg);
  std::cout << "claims: " << result.n_claims << "\n";
  std::cout << "predictions: " << result.predictions_path << "\n";
  std::cout << "report: " << result.report_path << "\n";
  std::cout << "manifest: " << result.manifest_path << "\n";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  std::cout << "micro F1 " << result.report.micro_f1 * 100.0 << "  P "
            << result.report.precision * 100.0 << "  R "
            << result.report.recall * 100.0;
  if (result.report.exact_match_accuracy)
    std::cout << "  Acc " << *result.report.exact_match_accuracy * 100.0;
  std::cout << "\n";
  return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gold_path,
             bool per_class, const std::string& out_path) {
  Dataset gold = load_dataset(gold_path, Schema::MultiLabel);

  std::ifstream in(pred_path);
  if (!in) throw IoError("cannot open predictions file: " + pred_path);
  const auto& tax = Taxonomy::builtin();
  std::vector<LabelSet> preds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("prediction record: ") + e.what(), lineno);
    }
    LabelSet set;
    if (rec.contains("label_set")) {
      for (const auto& l : rec["label_set"])
        set.insert(tax.normalize_label(l.get<std::string>()).id);
    } else if (rec.contains("top_label")) {
      set.insert(tax.normalize_label(rec["top_label"].get<std::string>()).id);
    } else {
      throw ParseError("prediction record lacks label_set/top_label", lineno);
    }
    preds.push_back(std::move(set));
  }

  std::vector<LabelSet> golds;
  bool multi = false;
  for (const auto& claim : gold.claims) {
    golds.emplace_back(claim.labels.begin(), claim.labels.end());
    multi = multi || claim.labels.size() > 1;
  }
  const auto freqs = label_frequencies(gold);
  // Accuracy applies to single-label gold only.
  const MetricsReport report = evaluate(preds, golds, freqs, !multi);
  const std::string rendered =
      render_report_markdown(report, "Evaluation: " + gold.name, per_class);
  if (out_path.empty())
    std::cout << rendered;
  else
    write_text(out_path, rendered);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logical fallacy classification toolkit"};
  app.set_version_flag("--version", std::string("fallax ") + kVersion);
  app.require_subcommand(1);

  std::string config_path;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "Run configuration file (JSON)");
  app.add_option("--jobs", jobs, "Parallel workers for claim processing");
  app.add_option("--seed", seed, "Override the configured random seed");
  // Global flags remain usable after a subcommand name.
  app.fallthrough();

  // taxonomy
  auto* taxonomy_cmd = app.add_subcommand("taxonomy", "Fallacy type registry");
  taxonomy_cmd->require_subcommand(1);
  taxonomy_cmd->add_subcommand("list", "List the 13 canonical types");
  std::string raw_label;
  auto* normalize_cmd =
      taxonomy_cmd->add_subcommand("normalize", "Map a raw label to its type");
  normalize_cmd->add_option("label", raw_label, "Raw label text")->required();

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Dataset inspection");
  corpus_cmd->require_subcommand(1);
  std::string corpus_path, corpus_schema = "single", corpus_split;
  auto* stats_cmd = corpus_cmd->add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("path", corpus_path)->required();
  stats_cmd->add_option("--schema", corpus_schema, "single|multi");
  stats_cmd->add_option("--split", corpus_split, "train|dev|test");
  auto* freq_cmd = corpus_cmd->add_subcommand("freq", "Label frequencies");
  freq_cmd->add_option("path", corpus_path)->required();
  freq_cmd->add_option("--schema", corpus_schema, "single|multi");
  auto* validate_cmd =
      corpus_cmd->add_subcommand("validate", "Parse and check a dataset file");
  validate_cmd->add_option("path", corpus_path)->required();
  validate_cmd->add_option("--schema", corpus_schema, "single|multi");

  // distill
  auto* distill_cmd =
      app.add_subcommand("distill", "Mask paraphrase span groups");
  std::string distill_in, distill_out, distill_backend = "hashed",
                                       distill_coref = "none";
  double distill_threshold = 0.7;
  distill_cmd->add_option("--in", distill_in)->required();
  distill_cmd->add_option("--out", distill_out)->required();
  distill_cmd->add_option("--threshold", distill_threshold,
                          "Cosine similarity threshold");
  distill_cmd->add_option("--backend", distill_backend,
                          "hashed|none|fixture:<path>");
  distill_cmd->add_option("--coref", distill_coref, "none|fixture:<path>");

  // hypothesis
  auto* hypothesis_cmd =
      app.add_subcommand("hypothesis", "Entailment hypothesis templates");
  hypothesis_cmd->require_subcommand(1);
  auto* show_cmd = hypothesis_cmd->add_subcommand("show", "Print a hypothesis");
  std::string hyp_type, hyp_mode = "raw";
  show_cmd->add_option("type", hyp_type, "Fallacy type or synonym")->required();
  show_cmd->add_option("--mode", hyp_mode, "raw|structural");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "NLI-based fallacy classification");
  std::string cls_in, cls_out, cls_premise = "raw", cls_hypothesis = "raw",
                               cls_scorer = "lexical", cls_schema = "single",
                               cls_split, cls_embedding = "hashed",
                               cls_coref = "none";
  double cls_threshold = 0.5, cls_sim_threshold = 0.7;
  classify_cmd->add_option("--in", cls_in)->required();
  classify_cmd->add_option("--out", cls_out)->required();
  classify_cmd->add_option("--premise", cls_premise, "raw|struct");
  classify_cmd->add_option("--hypothesis", cls_hypothesis, "raw|struct");
  classify_cmd->add_option("--scorer", cls_scorer,
                           "lexical|constant:<p>|fixture:<path>");
  classify_cmd->add_option("--threshold", cls_threshold,
                           "Decision threshold for label sets");
  classify_cmd->add_option("--schema", cls_schema, "single|multi");
  classify_cmd->add_option("--split", cls_split, "train|dev|test|all");
  classify_cmd->add_option("--embedding", cls_embedding,
                           "Embedding backend for structural premises");
  classify_cmd->add_option("--coref", cls_coref,
                           "Coreference backend for structural premises");
  classify_cmd->add_option("--sim-threshold", cls_sim_threshold,
                           "Distiller cosine threshold");

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "Reference classifiers");
  std::string bl_name, bl_in, bl_out, bl_train, bl_lm = "hash", bl_completion,
                                                 bl_schema = "single", bl_split;
  std::uint64_t bl_seed = 1;
  baseline_cmd->add_option("name", bl_name, "random|majority|perplexity|prompt")
      ->required();
  baseline_cmd->add_option("--in", bl_in)->required();
  baseline_cmd->add_option("--out", bl_out)->required();
  baseline_cmd->add_option("--seed", bl_seed, "PRNG seed (random baseline)");
  baseline_cmd->add_option("--train", bl_train,
                           "Training data for the majority baseline");
  baseline_cmd->add_option("--lm", bl_lm, "hash|fixture:<path>");
  baseline_cmd->add_option("--completion", bl_completion,
                           "fixture:<path>|static:<label>");
  baseline_cmd->add_option("--schema", bl_schema, "single|multi");
  baseline_cmd->add_option("--split", bl_split, "train|dev|test|all");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold");
  std::string eval_pred, eval_gold, eval_out;
  bool eval_per_class = false;
  eval_cmd->add_option("--pred", eval_pred)->required();
  eval_cmd->add_option("--gold", eval_gold)->required();
  eval_cmd->add_flag("--per-class", eval_per_class, "Include per-class table");
  eval_cmd->add_option("--out", eval_out, "Write the report here");

  // run
  auto* run_cmd =
      app.add_subcommand("run", "Full pipeline from a configuration file");
  std::string run_config;
  run_cmd->add_option("--config", run_config,
                      "Run configuration or manifest (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (taxonomy_cmd->parsed()) {
      if (normalize_cmd->parsed()) return cmd_taxonomy_normalize(raw_label);
      return cmd_taxonomy_list();
    }
    if (corpus_cmd->parsed()) {
      if (stats_cmd->parsed())
        return cmd_corpus_stats(corpus_path, corpus_schema, corpus_split);
      if (freq_cmd->parsed()) return cmd_corpus_freq(corpus_path, corpus_schema);
      return cmd_corpus_validate(corpus_path, corpus_schema);
    }
    if (distill_cmd->parsed())
      return cmd_distill(distill_in, distill_out, distill_threshold,
                         distill_backend, distill_coref);
    if (hypothesis_cmd->parsed()) return cmd_hypothesis_show(hyp_type, hyp_mode);
    if (classify_cmd->parsed()) {
      RunConfig cfg;
      cfg.dataset_path = cls_in;
      cfg.schema = parse_schema(cls_schema);
      cfg.eval_split = parse_split_opt(cls_split);
      cfg.task = "classify";
      cfg.premise_mode = parse_premise_mode(cls_premise);
      cfg.hypothesis_mode = parse_hypothesis_mode(cls_hypothesis);
      cfg.scorer = cls_scorer;
      cfg.decision_threshold = cls_threshold;
      cfg.similarity_threshold = cls_sim_threshold;
      cfg.embedding_backend = cls_embedding;
      cfg.coref_backend = cls_coref;
      cfg.jobs = jobs;
      if (seed) cfg.seed = *seed;
      cfg.output_dir = std::filesystem::path(cls_out).parent_path().string();
      if (cfg.output_dir.empty()) cfg.output_dir = ".";
      const RunResult result = run_pipeline(cfg);
      if (result.predictions_path != cls_out)
        std::filesystem::rename(result.predictions_path, cls_out);
      std::cout << "wrote " << cls_out << "\n";
      return 0;
    }
    if (baseline_cmd->parsed()) {
      RunConfig cfg;
      cfg.dataset_path = bl_in;
      cfg.schema = parse_schema(bl_schema);
      cfg.eval_split = parse_split_opt(bl_split);
      cfg.task = "baseline";
      cfg.baseline = bl_name;
      cfg.train_path = bl_train;
      cfg.lm_backend = bl_lm;
      cfg.completion_backend = bl_completion;
      cfg.seed = seed ? *seed : bl_seed;
      cfg.jobs = jobs;
      cfg.output_dir = std::filesystem::path(bl_out).parent_path().string();
      if (cfg.output_dir.empty()) cfg.output_dir = ".";
      const RunResult result = run_pipeline(cfg);
      if (result.predictions_path != bl_out)
        std::filesystem::rename(result.predictions_path, bl_out);
      std::cout << "wrote " << bl_out << "\n";
      return 0;
    }
    if (eval_cmd->parsed())
      return cmd_eval(eval_pred, eval_gold, eval_per_class, eval_out);
    if (run_cmd->parsed()) {
      const std::string path =
          !run_config.empty() ? run_config : config_path;
      if (path.empty())
        throw ConfigError("run needs --config <file>");
      RunConfig cfg = RunConfig::from_file(path);
      if (seed) cfg.seed = *seed;
      if (app.count("--jobs") > 0) cfg.jobs = jobs;
      return run_config_and_report(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "fallax: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
