// Copyright 2026 The Basa Authors.
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

// The pipeline commands behind the `basa` executable. Each command reads
// a RunConfig, writes data to files or `out`, diagnostics to `err`, and
// returns the process exit code: 0 ok, 1 fatal, 2 partial (some corpus
// files failed).

#ifndef BASA_COMMANDS_HPP_
#define BASA_COMMANDS_HPP_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "basa/classifiers.hpp"
#include "basa/corpus.hpp"
#include "basa/dataset.hpp"
#include "basa/detail/csv.hpp"
#include "basa/detail/random.hpp"
#include "basa/error.hpp"
#include "basa/evaluation.hpp"
#include "basa/features.hpp"
#include "basa/ranking.hpp"

namespace basa {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::string manifest;  // corpus manifest
  std::string features;  // features CSV (input)
  std::string model;     // model JSON
  std::string report;    // evaluation report JSON
  std::string out;       // primary output; stdout when empty (synth: directory)
  std::optional<FeatureSet> feature_set;  // defaults to both
  ModelType model_type = ModelType::kSvm;
  int folds = 10;
  std::uint64_t seed = 7;
  int bins = 10;
  int top = 10;
  int k_sample = 5;
  int polysyllabic_threshold = kDefaultPolysyllabicThreshold;
  std::string tagset;   // tagset mapping file
  std::string lexicon;  // fallback-tagger lexicon file
  char separator = '|';
  Hyperparams hyperparams;
  bool weighted_f1 = false;
  std::string confusion_csv;
  std::string profile_csv;
  std::string preset = "default";
  std::optional<int> per_level;

  FeatureSet effective_feature_set() const { return feature_set.value_or(FeatureSet::kBoth); }
};

namespace commands_detail {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    csv::write_file(path, content);
  }
}

inline LoadOptions load_options(const RunConfig& config) {
  LoadOptions options;
  options.separator = config.separator;
  if (!config.tagset.empty()) options.mapping = TagsetMapping::load(config.tagset);
  if (!config.lexicon.empty()) options.heuristic.lexicon = parse_lexicon(csv::read_file(config.lexicon));
  return options;
}

inline FeatureOptions feature_options(const RunConfig& config) {
  FeatureOptions options;
  options.polysyllabic_threshold = config.polysyllabic_threshold;
  options.sample_k = config.k_sample;
  options.seed = config.seed;
  return options;
}

struct Extraction {
  std::vector<FeatureRow> rows;
  std::vector<LoadError> errors;
};

inline Extraction extract_corpus(const RunConfig& config) {
  auto loaded = load_corpus(config.manifest, load_options(config));
  Extraction ex;
  ex.errors = std::move(loaded.errors);
  const auto options = feature_options(config);
  for (const auto& d : loaded.documents) {
    try {
      ex.rows.push_back({d.doc.id, d.level, extract_all(d.doc, options)});
    } catch (const Error& e) {
      ex.errors.push_back({e.code(), d.doc.id, e.what()});
    }
  }
  return ex;
}

inline void report_errors(const std::vector<LoadError>& errors, std::ostream& err) {
  for (const auto& e : errors) err << "basa: " << e.location << ": " << e.message << "\n";
}

// Feature rows from --features, or extracted on the fly from --manifest.
inline std::vector<FeatureRow> input_rows(const RunConfig& config, std::ostream& err,
                                          nlohmann::ordered_json& digests) {
  if (!config.features.empty()) {
    const std::string text = csv::read_file(config.features);
    digests["features"] = hex64(fnv1a64(text));
    return read_features_csv(text);
  }
  if (!config.manifest.empty()) {
    digests["manifest"] = hex64(fnv1a64(csv::read_file(config.manifest)));
    auto ex = extract_corpus(config);
    report_errors(ex.errors, err);
    return std::move(ex.rows);
  }
  throw Error(ErrorCode::kInvalidParams, "one of --features or --manifest is required");
}

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace commands_detail

/// Features CSV, one row per document in manifest order.
inline int cmd_extract(const RunConfig& config, std::ostream& out, std::ostream& err) {
  commands_detail::Extraction ex;
  try {
    ex = commands_detail::extract_corpus(config);
  } catch (const Error& e) {
    err << "basa extract: " << e.what() << "\n";
    return 1;
  }
  commands_detail::report_errors(ex.errors, err);
  try {
    commands_detail::emit(config.out, write_features_csv(ex.rows), out);
  } catch (const Error& e) {
    err << "basa extract: " << e.what() << "\n";
    return 1;
  }
  return ex.errors.empty() ? 0 : 2;
}

inline std::string format_confusion(const ConfusionMatrix& cm) {
  std::ostringstream s;
  s << "actual\\predicted";
  for (const int l : cm.levels()) s << "\tL" << l;
  s << "\n";
  for (std::size_t i = 0; i < cm.size(); ++i) {
    s << "L" << cm.levels()[i];
    for (std::size_t j = 0; j < cm.size(); ++j) s << "\t" << cm.at(i, j);
    s << "\n";
  }
  return s.str();
}

inline int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    nlohmann::ordered_json digests = nlohmann::ordered_json::object();
    const auto rows = commands_detail::input_rows(config, err, digests);
    const auto full = to_dataset(rows);
    const auto data = full.select(config.effective_feature_set());
    const auto report = cross_validate(data, {config.model_type, config.hyperparams},
                                       config.folds, config.seed);

    auto json = report_to_json(report);
    json["f1_average"] = config.weighted_f1 ? "weighted" : "macro";
    json["tool_version"] = kToolVersion;
    json["inputs"] = digests;
    if (!config.report.empty()) csv::write_file(config.report, json.dump(2) + "\n");

    const double f1 = config.weighted_f1 ? report.weighted_f1 : report.macro_f1;
    out << "model=" << model_type_name(report.model_type)
        << " feature_set=" << feature_set_name(report.feature_set)
        << " features=" << data.dims() << " accuracy=" << commands_detail::fixed3(report.accuracy)
        << " f1=" << commands_detail::fixed3(f1)
        << " rmse_label=" << commands_detail::fixed3(report.rmse_label)
        << " rmse_prob=" << commands_detail::fixed3(report.rmse_prob) << "\n";
    out << format_confusion(report.confusion);
    out << "level\tcorrect\tmisclassified\n";
    for (const auto& r : report.per_class) {
      out << "L" << r.level << "\t" << r.correct_percent() << "\t" << r.misclassified_percent()
          << "\n";
    }

    if (!config.confusion_csv.empty()) {
      std::string csv_text = "actual";
      for (const int l : report.confusion.levels()) csv_text += ",L" + std::to_string(l);
      csv_text += "\n";
      for (std::size_t i = 0; i < report.confusion.size(); ++i) {
        csv_text += "L" + std::to_string(report.confusion.levels()[i]);
        for (std::size_t j = 0; j < report.confusion.size(); ++j) {
          csv_text += "," + std::to_string(report.confusion.at(i, j));
        }
        csv_text += "\n";
      }
      csv::write_file(config.confusion_csv, csv_text);
    }
    if (!config.profile_csv.empty()) {
      const auto profile = polysyllabic_profile(full);
      std::string csv_text = "level,documents,total,mean_per_document\n";
      for (const auto& p : profile.levels) {
        csv_text += std::to_string(p.level) + "," + std::to_string(p.documents) + "," +
                    csv::format_double(p.total) + "," + csv::format_double(p.mean_per_document) +
                    "\n";
      }
      for (const int missing : profile.missing_levels) {
        err << "basa evaluate: EmptyLevel: no documents at level " << missing << "\n";
      }
      csv::write_file(config.profile_csv, csv_text);
    }
    return 0;
  } catch (const Error& e) {
    err << "basa evaluate: " << e.what() << "\n";
    return 1;
  }
}

inline std::string write_ranking_csv(const RankingReport& report) {
  std::string s = "feature,set,info_gain,pearson_rho,rank\n";
  for (const auto& e : report.entries) {
    s += e.feature + "," + e.group + "," + csv::format_double(e.info_gain) + "," +
         (e.pearson_rho ? csv::format_double(*e.pearson_rho) : std::string("undefined")) + "," +
         std::to_string(e.rank) + "\n";
  }
  return s;
}

inline int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    nlohmann::ordered_json digests;
    const auto rows = commands_detail::input_rows(config, err, digests);
    const auto data = to_dataset(rows).select(config.effective_feature_set());
    if (config.top < 1) throw Error(ErrorCode::kInvalidParams, "--top must be >= 1");
    const auto report = rank_features(data, config.bins, static_cast<std::size_t>(config.top));
    const std::string csv_text = write_ranking_csv(report);
    if (config.out.empty()) {
      out << csv_text;
      return 0;
    }
    csv::write_file(config.out, csv_text);
    out << "rank\tset\tfeature\tinfo_gain\trho\n";
    for (const auto& e : report.entries) {
      out << e.rank << "\t" << e.group << "\t" << e.feature << "\t"
          << commands_detail::fixed3(e.info_gain) << "\t"
          << (e.pearson_rho ? commands_detail::fixed3(*e.pearson_rho) : std::string("undefined"))
          << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "basa rank: " << e.what() << "\n";
    return 1;
  }
}

inline int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    nlohmann::ordered_json digests;
    const auto rows = commands_detail::input_rows(config, err, digests);
    const auto data = to_dataset(rows).select(config.effective_feature_set());
    const auto model = train_model(config.model_type, data, config.hyperparams);
    commands_detail::emit(config.model.empty() ? config.out : config.model, serialize_model(model),
                          out);
    return 0;
  } catch (const Error& e) {
    err << "basa train: " << e.what() << "\n";
    return 1;
  }
}

/// Prints `doc_id<TAB>level` followed by `L<level>=<probability>` for each
/// class (true probabilities for lr, softmax pseudo-probabilities for svm).
inline int cmd_predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.model.empty()) throw Error(ErrorCode::kInvalidParams, "--model is required");
    const auto model = parse_model(csv::read_file(config.model));
    if (config.feature_set && *config.feature_set != model.feature_set) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "model was trained on feature set '" +
                      std::string(feature_set_name(model.feature_set)) + "', input requests '" +
                      std::string(feature_set_name(*config.feature_set)) + "'");
    }
    if (model.feature_order != feature_names(model.feature_set)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "model feature order does not match the canonical order");
    }
    nlohmann::ordered_json digests;
    const auto rows = commands_detail::input_rows(config, err, digests);
    const auto idx = feature_indices(model.feature_set);
    std::string text;
    for (const auto& r : rows) {
      Row x;
      for (const auto i : idx) x.push_back(r.values[i]);
      const auto probs = predict_proba(model, x);
      text += r.doc_id + "\t" + std::to_string(predict_level(model, x));
      for (std::size_t c = 0; c < model.classes.size(); ++c) {
        text += "\tL" + std::to_string(model.classes[c]) + "=" + csv::format_double(probs[c]);
      }
      text += "\n";
    }
    commands_detail::emit(config.out, text, out);
    return 0;
  } catch (const Error& e) {
    err << "basa predict: " << e.what() << "\n";
    return 1;
  }
}

inline int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    SynthParams params;
    if (config.preset == "default") {
      params = default_params(config.seed);
    } else if (config.preset == "synergy") {
      params = synergy_params(config.seed);
    } else {
      throw Error(ErrorCode::kInvalidParams, "unknown preset '" + config.preset + "'");
    }
    if (config.per_level) {
      for (auto& l : params.levels) l.doc_count = *config.per_level;
    }
    if (config.out.empty()) throw Error(ErrorCode::kInvalidParams, "--out directory is required");
    const auto manifest = write_synthetic(params, config.out);
    out << manifest.string() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "basa synth: " << e.what() << "\n";
    return 1;
  }
}

inline int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "extract") return cmd_extract(config, out, err);
  if (config.command == "evaluate") return cmd_evaluate(config, out, err);
  if (config.command == "rank") return cmd_rank(config, out, err);
  if (config.command == "train") return cmd_train(config, out, err);
  if (config.command == "predict") return cmd_predict(config, out, err);
  if (config.command == "synth") return cmd_synth(config, out, err);
  err << "basa: unknown command '" << config.command << "'\n";
  return 1;
}

}  // namespace basa

#endif  // BASA_COMMANDS_HPP_
