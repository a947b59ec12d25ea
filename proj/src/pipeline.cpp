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

#include "fallax/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fallax/errors.hpp"
#include "fallax/version.hpp"

namespace fallax {

namespace {

using nlohmann::json;

bool has_prefix(const std::string& s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::string after_prefix(const std::string& s, std::string_view prefix) {
  return s.substr(prefix.size());
}

std::vector<FallacyId> canonical_ids() {
  std::vector<FallacyId> ids;
  ids.reserve(kNumFallacies);
  for (std::size_t i = 0; i < kNumFallacies; ++i)
    ids.push_back(static_cast<FallacyId>(i));
  return ids;
}

[[noreturn]] void stage_error(const std::string& stage, const std::string& what,
                              std::optional<std::size_t> record = {}) {
  std::string msg = "stage " + stage;
  if (record) msg += " (record " + std::to_string(*record) + ")";
  throw Error(msg + ": " + what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
}

}  // namespace

std::unique_ptr<EmbeddingBackend> make_embedding_backend(
    const std::string& name) {
  if (name == "hashed") return std::make_unique<HashedEmbeddingBackend>();
  if (name == "none") return std::make_unique<NullEmbeddingBackend>();
  if (has_prefix(name, "fixture:"))
    return FixtureEmbeddingBackend::from_file(after_prefix(name, "fixture:"));
  throw BackendUnavailable("unknown embedding backend: " + name);
}

std::unique_ptr<CorefBackend> make_coref_backend(const std::string& name) {
  if (name == "none" || name.empty())
    return std::make_unique<NullCorefBackend>();
  if (has_prefix(name, "fixture:"))
    return FixtureCorefBackend::from_file(after_prefix(name, "fixture:"));
  throw BackendUnavailable("unknown coreference backend: " + name);
}

std::unique_ptr<EntailmentScorer> make_scorer(const std::string& name) {
  if (name == "lexical") return std::make_unique<LexicalOverlapScorer>();
  if (has_prefix(name, "constant:"))
    return std::make_unique<ConstantScorer>(
        std::stod(after_prefix(name, "constant:")));
  if (has_prefix(name, "fixture:"))
    return FixtureScorer::from_file(after_prefix(name, "fixture:"));
  throw BackendUnavailable("unknown scorer: " + name);
}

std::unique_ptr<LmBackend> make_lm_backend(const std::string& name) {
  if (name == "hash") return std::make_unique<HashLmBackend>();
  if (has_prefix(name, "fixture:"))
    return FixtureLmBackend::from_file(after_prefix(name, "fixture:"));
  throw BackendUnavailable("unknown language model backend: " + name);
}

std::unique_ptr<CompletionBackend> make_completion_backend(
    const std::string& name) {
  if (has_prefix(name, "fixture:"))
    return FixtureCompletionBackend::from_file(after_prefix(name, "fixture:"));
  if (has_prefix(name, "static:")) {
    class StaticCompletion : public CompletionBackend {
     public:
      explicit StaticCompletion(std::string text) : text_(std::move(text)) {}
      std::string complete(const std::string&, double) override {
        return text_;
      }
      std::string name() const override { return "static"; }
      std::string version() const override { return "1"; }
      bool thread_safe() const override { return true; }

     private:
      std::string text_;
    };
    return std::make_unique<StaticCompletion>(after_prefix(name, "static:"));
  }
  throw BackendUnavailable("unknown completion backend: " + name);
}

std::optional<std::string> backend_credential() {
  const char* value = std::getenv(kCredentialEnvVar);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  // A manifest embeds the config it ran with; accept it directly.
  if (doc.contains("config") && doc["config"].is_object())
    doc = doc["config"];

  RunConfig cfg;
  try {
    cfg.dataset_path = doc.at("dataset_path").get<std::string>();
    const std::string schema = doc.value("schema", "single_label");
    if (schema == "single_label")
      cfg.schema = Schema::SingleLabel;
    else if (schema == "multi_label")
      cfg.schema = Schema::MultiLabel;
    else
      throw ConfigError("unknown schema: " + schema);
    if (doc.contains("eval_split") && !doc["eval_split"].is_null())
      cfg.eval_split = parse_split(doc["eval_split"].get<std::string>());
    cfg.task = doc.value("task", "classify");
    cfg.premise_mode = parse_premise_mode(doc.value("premise_mode", "raw"));
    cfg.hypothesis_mode =
        parse_hypothesis_mode(doc.value("hypothesis_mode", "raw"));
    cfg.scorer = doc.value("scorer", "lexical");
    cfg.decision_threshold = doc.value("decision_threshold", 0.5);
    cfg.baseline = doc.value("baseline", "");
    cfg.train_path = doc.value("train_path", "");
    cfg.lm_backend = doc.value("lm_backend", "hash");
    cfg.completion_backend = doc.value("completion_backend", "");
    cfg.similarity_threshold = doc.value("similarity_threshold", 0.7);
    cfg.embedding_backend = doc.value("embedding_backend", "hashed");
    cfg.coref_backend = doc.value("coref_backend", "none");
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.jobs = doc.value("jobs", 1);
    cfg.output_dir = doc.value("output_dir", "out");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.decision_threshold <= 0.0 || cfg.decision_threshold >= 1.0)
    throw ConfigError("decision_threshold must lie in (0, 1)");
  if (cfg.similarity_threshold <= 0.0 || cfg.similarity_threshold > 1.0)
    throw ConfigError("similarity_threshold must lie in (0, 1]");
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  return from_json_text(read_file(path));
}

std::string RunConfig::to_json_text() const {
  json doc;
  doc["dataset_path"] = dataset_path;
  doc["schema"] = schema == Schema::SingleLabel ? "single_label" : "multi_label";
  if (eval_split)
    doc["eval_split"] = split_name(*eval_split);
  else
    doc["eval_split"] = nullptr;
  doc["task"] = task;
  doc["premise_mode"] = premise_mode_name(premise_mode);
  doc["hypothesis_mode"] = hypothesis_mode_name(hypothesis_mode);
  doc["scorer"] = scorer;
  doc["decision_threshold"] = decision_threshold;
  doc["baseline"] = baseline;
  doc["train_path"] = train_path;
  doc["lm_backend"] = lm_backend;
  doc["completion_backend"] = completion_backend;
  doc["similarity_threshold"] = similarity_threshold;
  doc["embedding_backend"] = embedding_backend;
  doc["coref_backend"] = coref_backend;
  doc["seed"] = seed;
  doc["jobs"] = jobs;
  doc["output_dir"] = output_dir;
  return doc.dump(2);
}

RunResult run_pipeline(const RunConfig& cfg) {
  // Stage: load.
  Dataset ds;
  try {
    ds = load_dataset(cfg.dataset_path, cfg.schema);
  } catch (const std::exception& e) {
    stage_error("load", e.what());
  }
  std::vector<LabeledClaim> claims =
      cfg.eval_split ? ds.split_claims(*cfg.eval_split) : ds.claims;

  // Stage: backends.
  std::unique_ptr<EmbeddingBackend> embeddings;
  std::unique_ptr<CorefBackend> coref;
  std::unique_ptr<EntailmentScorer> scorer;
  std::unique_ptr<LmBackend> lm;
  std::unique_ptr<CompletionBackend> completion;
  json backend_versions = json::object();
  DistillerConfig distiller_cfg;
  distiller_cfg.similarity_threshold = cfg.similarity_threshold;
  bool all_thread_safe = true;
  try {
    if (cfg.task == "classify") {
      scorer = make_scorer(cfg.scorer);
      backend_versions["scorer"] = scorer->name() + "/" + scorer->version();
      all_thread_safe = all_thread_safe && scorer->thread_safe();
      if (cfg.premise_mode == PremiseMode::Structural) {
        embeddings = make_embedding_backend(cfg.embedding_backend);
        coref = make_coref_backend(cfg.coref_backend);
        backend_versions["embedding"] =
            embeddings->name() + "/" + embeddings->version();
        backend_versions["coreference"] =
            coref->name() + "/" + coref->version();
        all_thread_safe = all_thread_safe && embeddings->thread_safe() &&
                          coref->thread_safe();
      }
    } else if (cfg.task == "baseline") {
      if (cfg.baseline == "perplexity") {
        lm = make_lm_backend(cfg.lm_backend);
        backend_versions["lm"] = lm->name() + "/" + lm->version();
        all_thread_safe = all_thread_safe && lm->thread_safe();
      } else if (cfg.baseline == "prompt") {
        completion = make_completion_backend(cfg.completion_backend);
        backend_versions["completion"] =
            completion->name() + "/" + completion->version();
        all_thread_safe = all_thread_safe && completion->thread_safe();
      } else if (cfg.baseline != "random" && cfg.baseline != "majority") {
        throw ConfigError("unknown baseline: \"" + cfg.baseline + "\"");
      }
    } else {
      throw ConfigError("unknown task: \"" + cfg.task + "\"");
    }
  } catch (const std::exception& e) {
    stage_error("backends", e.what());
  }

  // Exclusive backends force serial processing to keep runs reproducible.
  const int jobs = all_thread_safe ? std::max(1, cfg.jobs) : 1;

  DistillFn distill_fn;
  if (cfg.premise_mode == PremiseMode::Structural && cfg.task == "classify") {
    EmbeddingBackend* emb = embeddings.get();
    CorefBackend* co = coref.get();
    DistillerConfig dcfg = distiller_cfg;
    distill_fn = [emb, co, dcfg](const std::string& text) {
      return distill(text, dcfg, emb, co);
    };
  }

  // Stage: predict.
  struct Prediction {
    std::vector<EntailmentScore> scores;  // classify only
    FallacyId top{};
    LabelSet set;
  };
  std::vector<Prediction> predictions(claims.size());
  const std::vector<FallacyId> all_ids = canonical_ids();

  // Failures inside the claim loop are tagged with the record index so the
  // abort message pinpoints the offending input.
  auto with_record = [](std::size_t i, const std::function<Prediction()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw Error("record " + std::to_string(i) + ": " + e.what());
    }
  };

  if (cfg.task == "classify") {
    std::function<Prediction(std::size_t)> score_one =
        [&](std::size_t i) -> Prediction {
      return with_record(i, [&]() -> Prediction {
        const std::string premise =
            build_premise(claims[i], cfg.premise_mode, distill_fn);
        Prediction p;
        p.scores = score_all(premise, cfg.hypothesis_mode, *scorer);
        p.top = predict_single(p.scores);
        p.set = cfg.schema == Schema::MultiLabel
                    ? predict_set(p.scores, cfg.decision_threshold)
                    : LabelSet{p.top};
        return p;
      });
    };
    try {
      predictions = parallel_map<Prediction>(claims.size(), jobs, score_one);
    } catch (const std::exception& e) {
      stage_error("predict", e.what());
    }
  } else if (cfg.baseline == "random") {
    const auto draws = random_baseline(claims.size(), all_ids, cfg.seed);
    for (std::size_t i = 0; i < claims.size(); ++i) {
      predictions[i].top = draws[i];
      predictions[i].set = {draws[i]};
    }
  } else if (cfg.baseline == "majority") {
    try {
      Dataset train = cfg.train_path.empty()
                          ? ds
                          : load_dataset(cfg.train_path, cfg.schema);
      Dataset train_split;
      train_split.schema = train.schema;
      train_split.claims = train.split_claims(Split::Train);
      if (train_split.claims.empty()) train_split.claims = train.claims;
      const FallacyId majority = majority_baseline(train_split);
      for (auto& p : predictions) {
        p.top = majority;
        p.set = {majority};
      }
    } catch (const std::exception& e) {
      stage_error("predict", e.what());
    }
  } else if (cfg.baseline == "perplexity") {
    BaselineConfig bcfg;
    bcfg.seed = cfg.seed;
    std::function<Prediction(std::size_t)> rank_one =
        [&](std::size_t i) -> Prediction {
      return with_record(i, [&]() -> Prediction {
        Prediction p;
        p.top = perplexity_rank(claims[i].text, all_ids, *lm, bcfg);
        p.set = {p.top};
        return p;
      });
    };
    try {
      predictions = parallel_map<Prediction>(claims.size(), jobs, rank_one);
    } catch (const std::exception& e) {
      stage_error("predict", e.what());
    }
  } else if (cfg.baseline == "prompt") {
    BaselineConfig bcfg;
    bcfg.seed = cfg.seed;
    std::function<Prediction(std::size_t)> prompt_one =
        [&](std::size_t i) -> Prediction {
      return with_record(i, [&]() -> Prediction {
        Prediction p;
        p.top = prompt_classify(claims[i].text, all_ids, *completion, bcfg);
        p.set = {p.top};
        return p;
      });
    };
    try {
      predictions = parallel_map<Prediction>(claims.size(), jobs, prompt_one);
    } catch (const std::exception& e) {
      stage_error("predict", e.what());
    }
  }

  // Stage: evaluate.
  RunResult result;
  result.n_claims = claims.size();
  try {
    std::vector<LabelSet> pred_sets, gold_sets;
    pred_sets.reserve(claims.size());
    gold_sets.reserve(claims.size());
    for (std::size_t i = 0; i < claims.size(); ++i) {
      pred_sets.push_back(predictions[i].set);
      gold_sets.push_back(LabelSet(claims[i].labels.begin(),
                                   claims[i].labels.end()));
    }
    std::map<FallacyId, double> freqs;
    if (!claims.empty()) {
      Dataset eval_ds;
      eval_ds.schema = cfg.schema;
      eval_ds.claims = claims;
      freqs = label_frequencies(eval_ds);
    }
    // Accuracy is only meaningful for single-label evaluation.
    const bool include_accuracy = cfg.schema == Schema::SingleLabel;
    result.report = evaluate(pred_sets, gold_sets, freqs, include_accuracy);
  } catch (const std::exception& e) {
    stage_error("evaluate", e.what());
  }

  // Stage: write outputs.
  try {
    std::filesystem::create_directories(cfg.output_dir);
    const std::string base = cfg.output_dir + "/";

    std::ostringstream pred_out;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      json rec;
      rec["text"] = claims[i].text;
      if (!predictions[i].scores.empty()) {
        json scores = json::array();
        for (const auto& s : predictions[i].scores) scores.push_back(s.score);
        rec["scores"] = scores;
      }
      rec["top_label"] = id_string(predictions[i].top);
      json set = json::array();
      for (FallacyId id : predictions[i].set) set.push_back(id_string(id));
      rec["label_set"] = set;
      pred_out << rec.dump() << '\n';
    }
    result.predictions_path = base + "predictions.jsonl";
    write_file(result.predictions_path, pred_out.str());

    result.report_path = base + "report.md";
    write_file(result.report_path,
               render_report_markdown(result.report,
                                      "Evaluation: " + ds.name, true));

    json manifest;
    manifest["fallax_version"] = kVersion;
    manifest["config"] = json::parse(cfg.to_json_text());
    manifest["backends"] = backend_versions;
    manifest["dataset_fnv64"] = fnv1a64(read_file(cfg.dataset_path));
    manifest["n_claims"] = claims.size();
    manifest["effective_jobs"] = jobs;
    result.manifest_path = base + "manifest.json";
    write_file(result.manifest_path, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    stage_error("write", e.what());
  }
  return result;
}

}  // namespace fallax
