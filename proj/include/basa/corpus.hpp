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

// Corpus manifests, feature files and the synthetic leveled-corpus
// generator.
//
// Manifest: CSV with header `path,level,format`; `format` is `plain` or
// `tagged`; relative paths resolve against the manifest's directory.
//
// Features file: CSV with header `doc_id,level,` followed by the 15
// canonical feature names; the level column is empty for unlabeled rows.

#ifndef BASA_CORPUS_HPP_
#define BASA_CORPUS_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "basa/dataset.hpp"
#include "basa/detail/csv.hpp"
#include "basa/detail/random.hpp"
#include "basa/error.hpp"
#include "basa/features.hpp"
#include "basa/pos.hpp"
#include "basa/text.hpp"

namespace basa {

enum class DocFormat { kPlain, kTagged };

inline std::string_view doc_format_name(DocFormat f) {
  return f == DocFormat::kPlain ? "plain" : "tagged";
}

struct ManifestEntry {
  std::string path;  // as written in the manifest
  int level = 0;
  DocFormat format = DocFormat::kPlain;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

/// A per-file problem recorded while loading; loading carries on.
struct LoadError {
  ErrorCode code;
  std::string location;
  std::string message;
};

struct ManifestParse {
  CorpusManifest manifest;
  std::vector<LoadError> errors;
};

namespace corpus_detail {

inline std::string trimmed(std::string_view s) { return std::string(text_detail::trim(s)); }

inline std::optional<int> parse_int(std::string_view s) {
  const std::string t = trimmed(s);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return static_cast<int>(v);
}

}  // namespace corpus_detail

/// Rows with bad levels, formats or duplicate paths are reported in
/// `errors` and skipped. A missing or wrong header is fatal.
inline ManifestParse parse_manifest(std::string_view text, std::string_view source = "manifest") {
  ManifestParse out;
  const auto rows = csv::lines(text);
  std::size_t first = 0;
  while (first < rows.size() && corpus_detail::trimmed(rows[first]).empty()) ++first;
  if (first == rows.size()) return out;
  const auto header = csv::split(rows[first]);
  if (header.size() != 3 || corpus_detail::trimmed(header[0]) != "path" ||
      corpus_detail::trimmed(header[1]) != "level" ||
      corpus_detail::trimmed(header[2]) != "format") {
    throw Error(ErrorCode::kMalformedManifestRow,
                std::string(source) + ":" + std::to_string(first + 1) +
                    ": expected header path,level,format");
  }
  std::set<std::string> seen;
  for (std::size_t r = first + 1; r < rows.size(); ++r) {
    if (corpus_detail::trimmed(rows[r]).empty()) continue;
    const std::string location = std::string(source) + ":" + std::to_string(r + 1);
    auto bad = [&](const std::string& why) {
      out.errors.push_back({ErrorCode::kMalformedManifestRow, location, why});
    };
    const auto fields = csv::split(rows[r]);
    if (fields.size() != 3) {
      bad("expected 3 fields, got " + std::to_string(fields.size()));
      continue;
    }
    ManifestEntry e;
    e.path = corpus_detail::trimmed(fields[0]);
    const auto level = corpus_detail::parse_int(fields[1]);
    const std::string format = corpus_detail::trimmed(fields[2]);
    if (e.path.empty()) {
      bad("empty path");
      continue;
    }
    if (!level || !is_valid_level(*level)) {
      bad("level must be 1, 2 or 3, got '" + corpus_detail::trimmed(fields[1]) + "'");
      continue;
    }
    e.level = *level;
    if (format == "plain" || format.empty()) {
      e.format = DocFormat::kPlain;
    } else if (format == "tagged") {
      e.format = DocFormat::kTagged;
    } else {
      bad("format must be plain or tagged, got '" + format + "'");
      continue;
    }
    if (!seen.insert(e.path).second) {
      bad("duplicate path '" + e.path + "'");
      continue;
    }
    out.manifest.entries.push_back(std::move(e));
  }
  return out;
}

inline std::string serialize_manifest(const CorpusManifest& manifest) {
  std::string out = "path,level,format\n";
  for (const auto& e : manifest.entries) {
    out += csv::quote(e.path) + "," + std::to_string(e.level) + "," +
           std::string(doc_format_name(e.format)) + "\n";
  }
  return out;
}

struct LoadOptions {
  char separator = '|';
  TagsetMapping mapping = TagsetMapping::defaults();
  HeuristicOptions heuristic;
};

struct LabeledDocument {
  TaggedDocument doc;  // id = manifest path
  int level = 0;
  DocFormat format = DocFormat::kPlain;
};

struct LoadResult {
  std::vector<LabeledDocument> documents;  // manifest order
  std::vector<LoadError> errors;
};

/// Parses one document from its text. Plain text goes through the
/// segmenter and the fallback tagger.
inline TaggedDocument parse_document(std::string id, std::string_view content, DocFormat format,
                                     const LoadOptions& options = {}) {
  if (format == DocFormat::kTagged) {
    return make_tagged_document(std::move(id), content, options.separator, options.mapping);
  }
  return tag_document(make_document(std::move(id), std::string(content)), options.heuristic);
}

/// Loads every manifest entry it can; per-file problems are collected in
/// `errors`. Throws only when the manifest itself is unreadable.
inline LoadResult load_corpus(const std::filesystem::path& manifest_path,
                              const LoadOptions& options = {}) {
  const std::string text = csv::read_file(manifest_path.string());
  auto parsed = parse_manifest(text, manifest_path.string());
  LoadResult result;
  result.errors = std::move(parsed.errors);
  const auto base = manifest_path.parent_path();
  for (const auto& entry : parsed.manifest.entries) {
    const auto file = base / entry.path;
    std::string content;
    try {
      content = csv::read_file(file.string());
    } catch (const Error& e) {
      result.errors.push_back({ErrorCode::kMissingFile, entry.path, e.what()});
      continue;
    }
    try {
      result.documents.push_back(
          {parse_document(entry.path, content, entry.format, options), entry.level, entry.format});
    } catch (const Error& e) {
      result.errors.push_back({e.code(), entry.path, e.what()});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Features file

struct FeatureRow {
  std::string doc_id;
  std::optional<int> level;
  FeatureValues values{};
};

inline std::string features_csv_header() {
  std::string h = "doc_id,level";
  for (const auto name : kFeatureNames) {
    h += ",";
    h += name;
  }
  return h;
}

inline std::string write_features_csv(const std::vector<FeatureRow>& rows) {
  std::string out = features_csv_header() + "\n";
  for (const auto& r : rows) {
    out += csv::quote(r.doc_id) + "," + (r.level ? std::to_string(*r.level) : std::string());
    for (const double v : r.values) out += "," + csv::format_double(v);
    out += "\n";
  }
  return out;
}

inline std::vector<FeatureRow> read_features_csv(std::string_view text) {
  const auto rows = csv::lines(text);
  if (rows.empty() || rows.front() != features_csv_header()) {
    throw Error(ErrorCode::kMalformedFeatures, "line 1: expected header " + features_csv_header());
  }
  std::vector<FeatureRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    const std::string where = "line " + std::to_string(r + 1);
    const auto fields = csv::split(rows[r]);
    if (fields.size() != 2 + kFeatureCount) {
      throw Error(ErrorCode::kMalformedFeatures, where + ": expected " +
                                                     std::to_string(2 + kFeatureCount) + " fields");
    }
    FeatureRow row;
    row.doc_id = fields[0];
    if (!fields[1].empty()) {
      const auto level = corpus_detail::parse_int(fields[1]);
      if (!level || !is_valid_level(*level)) {
        throw Error(ErrorCode::kMalformedFeatures, where + ": bad level '" + fields[1] + "'");
      }
      row.level = *level;
    }
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const std::string& f = fields[2 + j];
      char* end = nullptr;
      row.values[j] = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw Error(ErrorCode::kMalformedFeatures,
                    where + ": bad value '" + f + "' for " + std::string(kFeatureNames[j]));
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// Full 15-column dataset; every row must carry a level.
inline LabeledDataset to_dataset(const std::vector<FeatureRow>& rows) {
  LabeledDataset data;
  data.feature_set = FeatureSet::kBoth;
  data.feature_names = feature_names(FeatureSet::kBoth);
  for (const auto& r : rows) {
    if (!r.level) {
      throw Error(ErrorCode::kMalformedFeatures, "row '" + r.doc_id + "' has no level");
    }
    data.doc_ids.push_back(r.doc_id);
    data.labels.push_back(*r.level);
    data.rows.emplace_back(r.values.begin(), r.values.end());
  }
  return data;
}

// ---------------------------------------------------------------------------
// Synthetic corpus

/// Generation parameters for one readability level.
struct SynthLevel {
  int level = 1;
  int doc_count = 1;
  double mean_sentences = 10;        // per document
  double mean_sentence_length = 6;   // words per sentence
  double polysyllable_rate = 0.1;    // chance each polysyllable slot is filled
  double content_density = 0.55;     // share of content words among non-foreign words
  double foreign_rate = 0.02;        // share of foreign words
};

/// Per-document realisations vary around the level means: the sentence
/// mean is scaled by (1 + sentence_count_cv * N(0,1)), density and foreign
/// rate get additive N(0, jitter) offsets. Each document holds
/// `polysyllable_slots` candidate positions; each slot independently
/// becomes a word of 7-9 syllables with the level's polysyllable rate, so
/// the expected count per document is slots * rate whatever the length.
struct SynthParams {
  std::vector<SynthLevel> levels;
  std::uint64_t seed = 7;
  int polysyllable_slots = 40;
  double sentence_count_cv = 0.25;
  double density_jitter = 0.05;
  double foreign_jitter = 0.01;
  double comma_rate = 0.12;

  void validate() const {
    if (levels.empty()) throw Error(ErrorCode::kInvalidParams, "no levels");
    std::set<int> seen;
    for (const auto& l : levels) {
      const bool ok = is_valid_level(l.level) && seen.insert(l.level).second &&
                      l.doc_count > 0 && l.mean_sentences > 0 && l.mean_sentence_length >= 1 &&
                      l.polysyllable_rate >= 0 && l.polysyllable_rate <= 1 &&
                      l.content_density >= 0 && l.content_density <= 1 &&
                      l.foreign_rate >= 0 && l.foreign_rate <= 1;
      if (!ok) {
        throw Error(ErrorCode::kInvalidParams,
                    "level " + std::to_string(l.level) +
                        ": counts must be positive, rates in [0,1], levels unique in 1-3");
      }
    }
    const auto in_unit = [](double v) { return v >= 0 && v <= 1; };
    if (polysyllable_slots < 0 || sentence_count_cv < 0 || density_jitter < 0 ||
        foreign_jitter < 0 || !in_unit(comma_rate)) {
      throw Error(ErrorCode::kInvalidParams, "dispersion settings must be non-negative");
    }
  }
};

/// Shaped after the reference corpus statistics: 29/30/30 books with
/// 6,561 / 13,603 / 36,022 tokens over 1,059 / 1,610 / 3,330 sentences.
inline SynthParams default_params(std::uint64_t seed = 7) {
  SynthParams p;
  p.seed = seed;
  p.levels = {
      {1, 29, 1059.0 / 29, 6561.0 / 1059, 0.15, 0.55, 0.02},
      {2, 30, 1610.0 / 30, 13603.0 / 1610, 0.30, 0.58, 0.04},
      {3, 30, 3330.0 / 30, 36022.0 / 3330, 0.45, 0.60, 0.06},
  };
  return p;
}

/// Level signal split between sentence counts (surface) and content-word
/// density plus foreign rate (lexical); sentence length and polysyllable
/// rate are flat across levels.
inline SynthParams synergy_params(std::uint64_t seed = 7) {
  SynthParams p;
  p.seed = seed;
  p.levels = {
      {1, 30, 40, 8, 0.2, 0.50, 0.02},
      {2, 30, 50, 8, 0.2, 0.55, 0.04},
      {3, 30, 60, 8, 0.2, 0.60, 0.06},
  };
  p.sentence_count_cv = 0.25;
  p.density_jitter = 0.05;
  p.foreign_jitter = 0.015;
  return p;
}

struct SynthDocument {
  std::string path;  // relative, e.g. L1/doc_001.txt
  int level = 0;
  std::string text;  // tagged format, '|' separator
};

namespace synth_detail {

inline constexpr std::string_view kConsonants[] = {"b", "d", "g", "h", "k", "l", "m",
                                                   "n", "p", "r", "s", "t", "w", "y", "ng"};
inline constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u"};

struct FixedWord {
  std::string_view surface;
  std::string_view tag;
};

inline constexpr FixedWord kFunctionWords[] = {
    {"ang", "DTC"},  {"ng", "CCB"},   {"sa", "CCP"},  {"si", "DTCP"}, {"ay", "LM"},
    {"at", "CCT"},   {"na", "CCP"},   {"mga", "DTCP"}, {"kay", "CCP"}, {"ni", "DTCP"},
    {"siya", "PRS"}, {"ako", "PRS"},  {"sila", "PRP"}, {"kami", "PRP"}, {"ito", "PRD"},
};

inline constexpr FixedWord kForeignWords[] = {
    {"computer", "FW"}, {"video", "FW"},  {"cellphone", "FW"}, {"jacket", "FW"},
    {"zoo", "FW"},      {"pizza", "FW"},  {"juice", "FW"},     {"coffee", "FW"},
    {"van", "FW"},      {"taxi", "FW"},   {"chocolate", "FW"}, {"fax", "FW"},
    {"quiz", "FW"},     {"jeep", "FW"},   {"volleyball", "FW"}, {"chef", "FW"},
};

inline constexpr std::string_view kContentTags[] = {"NNC", "VBTS", "JJD", "RBI"};
inline constexpr double kContentWeights[] = {0.45, 0.30, 0.15, 0.10};

// Vocabulary entry `index` with `syllables` CV syllables; a pure function of
// (corpus seed, syllables, index) so words repeat across documents.
inline std::string vocab_word(std::uint64_t corpus_seed, int syllables, std::uint64_t index) {
  Rng rng(derive_seed(derive_seed(corpus_seed, static_cast<std::uint64_t>(syllables)), index));
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kConsonants[rng.below(std::size(kConsonants))];
    w += kVowels[rng.below(std::size(kVowels))];
  }
  return w;
}

// Zipf-like draw over a vocabulary of `size` entries (heavy head).
inline std::uint64_t vocab_index(Rng& rng, std::uint64_t size) {
  const double u = rng.uniform();
  return static_cast<std::uint64_t>(static_cast<double>(size) * u * u);
}

inline std::string content_tag(Rng& rng) {
  double u = rng.uniform();
  for (std::size_t i = 0; i < std::size(kContentTags); ++i) {
    if (u < kContentWeights[i]) return std::string(kContentTags[i]);
    u -= kContentWeights[i];
  }
  return std::string(kContentTags[0]);
}

inline int ordinary_syllables(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.10) return 1;
  if (u < 0.55) return 2;
  if (u < 0.85) return 3;
  return 4;
}

inline std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

inline std::string generate_document(const SynthParams& params, const SynthLevel& level,
                                     int doc_index) {
  Rng rng(derive_seed(params.seed, "L" + std::to_string(level.level) + "/doc" +
                                       std::to_string(doc_index)));
  const double scale = std::max(0.2, 1.0 + params.sentence_count_cv * rng.normal());
  const auto n_sentences =
      std::max<std::uint64_t>(1, rng.poisson(level.mean_sentences * scale));
  const double density =
      std::clamp(level.content_density + params.density_jitter * rng.normal(), 0.0, 1.0);
  const double foreign =
      std::clamp(level.foreign_rate + params.foreign_jitter * rng.normal(), 0.0, 1.0);

  std::vector<std::size_t> lengths;
  std::size_t total_words = 0;
  for (std::uint64_t s = 0; s < n_sentences; ++s) {
    lengths.push_back(1 + rng.poisson(level.mean_sentence_length - 1.0));
    total_words += lengths.back();
  }
  std::vector<bool> polysyllabic(total_words, false);
  if (params.polysyllable_slots > 0) {
    for (const auto pos : sample_indices(total_words, params.polysyllable_slots, rng.next())) {
      polysyllabic[pos] = rng.bernoulli(level.polysyllable_rate);
    }
  }

  constexpr std::uint64_t kVocabSize = 1500;
  constexpr std::uint64_t kLongVocabSize = 200;
  std::string out;
  std::size_t position = 0;
  for (const auto len : lengths) {
    for (std::size_t w = 0; w < len; ++w, ++position) {
      std::string surface;
      std::string tag;
      if (polysyllabic[position]) {
        const int syl = 7 + static_cast<int>(rng.below(3));
        surface = vocab_word(params.seed, syl, vocab_index(rng, kLongVocabSize));
        tag = content_tag(rng);
      } else if (rng.bernoulli(foreign)) {
        const auto& fw = kForeignWords[rng.below(std::size(kForeignWords))];
        surface = fw.surface;
        tag = fw.tag;
      } else if (rng.bernoulli(density)) {
        surface = vocab_word(params.seed, ordinary_syllables(rng), vocab_index(rng, kVocabSize));
        tag = content_tag(rng);
      } else {
        const auto& fw = kFunctionWords[rng.below(std::size(kFunctionWords))];
        surface = fw.surface;
        tag = fw.tag;
      }
      if (w == 0) surface = capitalize(std::move(surface));
      if (w > 0) out.push_back(' ');
      out += surface + "|" + tag;
      if (w + 1 < len && rng.bernoulli(params.comma_rate)) out += " ,|PMC";
    }
    out += " .|PMP\n";
  }
  return out;
}

}  // namespace synth_detail

/// Deterministic per seed; each document draws from its own derived seed so
/// generation order does not affect content.
inline std::vector<SynthDocument> generate_synthetic(const SynthParams& params) {
  params.validate();
  std::vector<SynthLevel> levels = params.levels;
  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.level < b.level; });
  std::vector<SynthDocument> docs;
  for (const auto& level : levels) {
    for (int i = 1; i <= level.doc_count; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "doc_%03d.txt", i);
      docs.push_back({"L" + std::to_string(level.level) + "/" + name, level.level,
                      synth_detail::generate_document(params, level, i)});
    }
  }
  return docs;
}

inline CorpusManifest manifest_for(const std::vector<SynthDocument>& docs) {
  CorpusManifest m;
  for (const auto& d : docs) m.entries.push_back({d.path, d.level, DocFormat::kTagged});
  return m;
}

/// Writes the documents and `manifest.csv` under `out_dir`; returns the
/// manifest path.
inline std::filesystem::path write_synthetic(const SynthParams& params,
                                             const std::filesystem::path& out_dir) {
  const auto docs = generate_synthetic(params);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string());
  for (const auto& d : docs) {
    const auto file = out_dir / d.path;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + file.parent_path().string());
    csv::write_file(file.string(), d.text);
  }
  const auto manifest = out_dir / "manifest.csv";
  csv::write_file(manifest.string(), serialize_manifest(manifest_for(docs)));
  return manifest;
}

}  // namespace basa

#endif  // BASA_CORPUS_HPP_
