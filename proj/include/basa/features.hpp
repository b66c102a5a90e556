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

// Document-level readability features.
//
// Traditional (surface) features, canonical indices 0-6:
//   avg_sentence_length, avg_token_length, sentence_count, word_count,
//   phrase_count, avg_syllables_per_word, polysyllabic_count
// Lexical features, canonical indices 7-14:
//   noun_token_ratio, verb_token_ratio, ttr, root_ttr, corr_ttr, bilog_ttr,
//   lexical_density, foreign_ratio
//
// The TTR family and lexical density are measured on a seeded sample of
// sentences (five by default); the category ratios use the whole document.

#ifndef BASA_FEATURES_HPP_
#define BASA_FEATURES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "basa/detail/random.hpp"
#include "basa/error.hpp"
#include "basa/pos.hpp"
#include "basa/text.hpp"

namespace basa {

enum class FeatureSet { kTrad, kLex, kBoth };

inline constexpr std::size_t kTradFeatureCount = 7;
inline constexpr std::size_t kLexFeatureCount = 8;
inline constexpr std::size_t kFeatureCount = kTradFeatureCount + kLexFeatureCount;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "avg_sentence_length", "avg_token_length", "sentence_count",   "word_count",
    "phrase_count",        "avg_syllables_per_word", "polysyllabic_count",
    "noun_token_ratio",    "verb_token_ratio", "ttr",              "root_ttr",
    "corr_ttr",            "bilog_ttr",        "lexical_density",  "foreign_ratio",
};

using FeatureValues = std::array<double, kFeatureCount>;

inline std::string_view feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::kTrad: return "trad";
    case FeatureSet::kLex: return "lex";
    case FeatureSet::kBoth: return "both";
  }
  return "both";
}

inline std::optional<FeatureSet> parse_feature_set(std::string_view name) {
  const std::string lower = utf8::to_lower(name);
  if (lower == "trad") return FeatureSet::kTrad;
  if (lower == "lex") return FeatureSet::kLex;
  if (lower == "both" || lower == "trad+lex") return FeatureSet::kBoth;
  return std::nullopt;
}

inline std::vector<std::size_t> feature_indices(FeatureSet set) {
  std::size_t begin = 0;
  std::size_t end = kFeatureCount;
  if (set == FeatureSet::kTrad) end = kTradFeatureCount;
  if (set == FeatureSet::kLex) begin = kTradFeatureCount;
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(i);
  return out;
}

inline std::vector<std::string> feature_names(FeatureSet set) {
  std::vector<std::string> out;
  for (const auto i : feature_indices(set)) out.emplace_back(kFeatureNames[i]);
  return out;
}

/// "TRAD" or "LEX" for a canonical feature index.
inline std::string_view feature_group(std::size_t index) {
  return index < kTradFeatureCount ? "TRAD" : "LEX";
}

struct TradFeatures {
  double avg_sentence_length = 0;
  double avg_token_length = 0;
  double sentence_count = 0;
  double word_count = 0;
  double phrase_count = 0;
  double avg_syllables_per_word = 0;
  double polysyllabic_count = 0;

  std::array<double, kTradFeatureCount> values() const {
    return {avg_sentence_length, avg_token_length, sentence_count, word_count,
            phrase_count, avg_syllables_per_word, polysyllabic_count};
  }
};

struct LexFeatures {
  double noun_token_ratio = 0;
  double verb_token_ratio = 0;
  double ttr = 0;
  double root_ttr = 0;
  double corr_ttr = 0;
  double bilog_ttr = 0;
  double lexical_density = 0;
  double foreign_ratio = 0;

  std::array<double, kLexFeatureCount> values() const {
    return {noun_token_ratio, verb_token_ratio, ttr, root_ttr,
            corr_ttr, bilog_ttr, lexical_density, foreign_ratio};
  }
};

struct FeatureVector {
  std::string doc_id;
  FeatureSet feature_set = FeatureSet::kBoth;
  std::vector<double> values;
};

struct FeatureOptions {
  int polysyllabic_threshold = kDefaultPolysyllabicThreshold;
  int sample_k = 5;
  std::uint64_t seed = 7;
  bool sample_ttr = true;      // TTR family over the sentence sample
  bool sample_density = true;  // lexical density over the sentence sample
};

// ---------------------------------------------------------------------------
// Traditional features

namespace features_detail {

template <typename SentenceT, typename WordFn>
TradFeatures trad_from(const std::vector<SentenceT>& sentences, WordFn&& for_each_word,
                       int threshold) {
  TradFeatures f;
  double letters = 0;
  double syllables = 0;
  for (const auto& sentence : sentences) {
    double words_here = 0;
    for_each_word(sentence, [&](const Token& t) {
      words_here += 1;
      letters += t.char_length;
      syllables += t.syllable_count;
      if (is_polysyllabic(t, threshold)) f.polysyllabic_count += 1;
    });
    if (words_here == 0) continue;
    f.sentence_count += 1;
    f.word_count += words_here;
    f.phrase_count += sentence.phrase_count;
  }
  if (f.word_count > 0) {
    f.avg_sentence_length = f.word_count / f.sentence_count;
    f.avg_token_length = letters / f.word_count;
    f.avg_syllables_per_word = syllables / f.word_count;
  }
  return f;
}

}  // namespace features_detail

inline TradFeatures extract_trad(const TaggedDocument& doc,
                                 int threshold = kDefaultPolysyllabicThreshold) {
  return features_detail::trad_from(
      doc.sentences,
      [](const TaggedSentence& s, auto&& visit) {
        for (const auto& item : s.items) {
          if (item.token.is_word()) visit(item.token);
        }
      },
      threshold);
}

inline TradFeatures extract_trad(const Document& doc,
                                 int threshold = kDefaultPolysyllabicThreshold) {
  return features_detail::trad_from(
      doc.sentences,
      [](const Sentence& s, auto&& visit) {
        for (const auto& t : s.tokens) {
          if (t.is_word()) visit(t);
        }
      },
      threshold);
}

// ---------------------------------------------------------------------------
// Sentence sampling

/// Chooses min(k, population) distinct indices in [0, population) by a seeded
/// partial Fisher-Yates draw; returned in ascending order.
inline std::vector<std::size_t> sample_indices(std::size_t population, int k,
                                               std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "sample size must be >= 1");
  std::vector<std::size_t> pool(population);
  for (std::size_t i = 0; i < population; ++i) pool[i] = i;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), population);
  Rng rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// Seeded sample of word-bearing sentences, in document order.
inline std::vector<TaggedSentence> sample_sentences(const TaggedDocument& doc, int k,
                                                    std::uint64_t seed) {
  std::vector<const TaggedSentence*> eligible;
  for (const auto& s : doc.sentences) {
    if (s.has_words()) eligible.push_back(&s);
  }
  if (eligible.empty()) {
    throw Error(ErrorCode::kEmptyDocument, "document '" + doc.id + "' has no sentences");
  }
  std::vector<TaggedSentence> out;
  for (const auto i : sample_indices(eligible.size(), k, seed)) out.push_back(*eligible[i]);
  return out;
}

inline std::vector<Sentence> sample_sentences(const Document& doc, int k, std::uint64_t seed) {
  if (doc.sentences.empty()) {
    throw Error(ErrorCode::kEmptyDocument, "document '" + doc.id + "' has no sentences");
  }
  std::vector<Sentence> out;
  for (const auto i : sample_indices(doc.sentences.size(), k, seed)) {
    out.push_back(doc.sentences[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexical richness formulas

struct TtrFamily {
  double ttr = 0;
  double root_ttr = 0;
  double corr_ttr = 0;
  double bilog_ttr = 0;
};

/// T = distinct normalized forms, N = tokens. bilog_ttr is pinned to 1 when
/// N <= 1 (zero denominator) and when every token is distinct.
inline TtrFamily compute_ttr_family(std::span<const Token> tokens) {
  if (tokens.empty()) throw Error(ErrorCode::kEmptyInput, "TTR of an empty token list");
  std::unordered_set<std::string_view> types;
  for (const auto& t : tokens) types.insert(t.normalized);
  const double n = static_cast<double>(tokens.size());
  const double t = static_cast<double>(types.size());
  TtrFamily f;
  f.ttr = t / n;
  f.root_ttr = t / std::sqrt(n);
  f.corr_ttr = t / std::sqrt(2.0 * n);
  f.bilog_ttr = (tokens.size() <= 1 || types.size() == tokens.size())
                    ? 1.0
                    : std::log(t) / std::log(n);
  return f;
}

namespace features_detail {

template <typename Pred>
double category_share(std::span<const TaggedToken> tagged, Pred&& pred) {
  if (tagged.empty()) throw Error(ErrorCode::kEmptyInput, "ratio over an empty token list");
  std::size_t hits = 0;
  for (const auto& t : tagged) {
    if (pred(t.category)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(tagged.size());
}

}  // namespace features_detail

/// Share of nouns, verbs, adjectives and adverbs.
inline double lexical_density(std::span<const TaggedToken> tagged) {
  return features_detail::category_share(tagged, is_content_category);
}

inline double lexical_variation(std::span<const TaggedToken> tagged, LexicalCategory category) {
  return features_detail::category_share(
      tagged, [category](LexicalCategory c) { return c == category; });
}

inline double foreign_ratio(std::span<const TaggedToken> tagged) {
  return lexical_variation(tagged, LexicalCategory::kForeign);
}

// ---------------------------------------------------------------------------
// Document-level extraction

namespace features_detail {

inline std::vector<TaggedToken> words_of(const std::vector<TaggedSentence>& sentences) {
  std::vector<TaggedToken> out;
  for (const auto& s : sentences) {
    for (const auto& item : s.items) {
      if (item.token.is_word()) out.push_back(item);
    }
  }
  return out;
}

inline std::vector<Token> tokens_of(const std::vector<TaggedToken>& tagged) {
  std::vector<Token> out;
  out.reserve(tagged.size());
  for (const auto& t : tagged) out.push_back(t.token);
  return out;
}

}  // namespace features_detail

/// `seed` drives the sentence sample directly; see build_feature_vector for
/// the per-document derivation used by the pipeline.
inline LexFeatures extract_lex(const TaggedDocument& doc, const FeatureOptions& options,
                               std::uint64_t seed) {
  const auto whole = features_detail::words_of(doc.sentences);
  if (whole.empty()) {
    throw Error(ErrorCode::kEmptyDocument, "document '" + doc.id + "' has no words");
  }
  std::vector<TaggedToken> sampled;
  if (options.sample_ttr || options.sample_density) {
    sampled = features_detail::words_of(sample_sentences(doc, options.sample_k, seed));
  }

  LexFeatures f;
  f.noun_token_ratio = lexical_variation(whole, LexicalCategory::kNoun);
  f.verb_token_ratio = lexical_variation(whole, LexicalCategory::kVerb);
  f.foreign_ratio = foreign_ratio(whole);
  f.lexical_density = lexical_density(options.sample_density ? sampled : whole);

  const auto ttr = compute_ttr_family(features_detail::tokens_of(options.sample_ttr ? sampled : whole));
  f.ttr = ttr.ttr;
  f.root_ttr = ttr.root_ttr;
  f.corr_ttr = ttr.corr_ttr;
  f.bilog_ttr = ttr.bilog_ttr;
  return f;
}

inline LexFeatures extract_lex(const TaggedDocument& doc, int k, std::uint64_t seed) {
  FeatureOptions options;
  options.sample_k = k;
  return extract_lex(doc, options, seed);
}

/// Seed for a document's sentence sample: a hash of the global seed and the
/// document id, so results do not depend on processing order.
inline std::uint64_t document_seed(std::uint64_t global_seed, std::string_view doc_id) {
  return derive_seed(global_seed, doc_id);
}

/// All 15 canonical values. Throws EmptyDocument when the document has no
/// words.
inline FeatureValues extract_all(const TaggedDocument& doc, const FeatureOptions& options = {}) {
  const auto trad = extract_trad(doc, options.polysyllabic_threshold).values();
  const auto lex =
      extract_lex(doc, options, document_seed(options.seed, doc.id)).values();
  FeatureValues out{};
  std::copy(trad.begin(), trad.end(), out.begin());
  std::copy(lex.begin(), lex.end(), out.begin() + kTradFeatureCount);
  return out;
}

inline FeatureVector select_features(std::string doc_id, const FeatureValues& all,
                                     FeatureSet set) {
  FeatureVector fv;
  fv.doc_id = std::move(doc_id);
  fv.feature_set = set;
  for (const auto i : feature_indices(set)) fv.values.push_back(all[i]);
  return fv;
}

inline FeatureVector build_feature_vector(const TaggedDocument& doc, FeatureSet set,
                                          const FeatureOptions& options = {}) {
  if (set == FeatureSet::kTrad) {
    const auto trad = extract_trad(doc, options.polysyllabic_threshold).values();
    FeatureVector fv;
    fv.doc_id = doc.id;
    fv.feature_set = set;
    fv.values.assign(trad.begin(), trad.end());
    return fv;
  }
  return select_features(doc.id, extract_all(doc, options), set);
}

}  // namespace basa

#endif  // BASA_FEATURES_HPP_
