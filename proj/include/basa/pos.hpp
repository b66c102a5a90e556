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

// Part-of-speech layer: reading `word|TAG` tagger output, mapping raw tags
// onto lexical categories, and a small rule-based fallback tagger for plain
// text.

#ifndef BASA_POS_HPP_
#define BASA_POS_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "basa/error.hpp"
#include "basa/text.hpp"

namespace basa {

enum class LexicalCategory { kNoun, kVerb, kAdjective, kAdverb, kPronoun, kForeign, kOther };

inline constexpr std::array<LexicalCategory, 7> kAllCategories = {
    LexicalCategory::kNoun,    LexicalCategory::kVerb,    LexicalCategory::kAdjective,
    LexicalCategory::kAdverb,  LexicalCategory::kPronoun, LexicalCategory::kForeign,
    LexicalCategory::kOther};

inline std::string_view category_name(LexicalCategory c) {
  switch (c) {
    case LexicalCategory::kNoun: return "Noun";
    case LexicalCategory::kVerb: return "Verb";
    case LexicalCategory::kAdjective: return "Adjective";
    case LexicalCategory::kAdverb: return "Adverb";
    case LexicalCategory::kPronoun: return "Pronoun";
    case LexicalCategory::kForeign: return "Foreign";
    case LexicalCategory::kOther: return "Other";
  }
  return "Other";
}

// Case-insensitive inverse of category_name.
inline std::optional<LexicalCategory> parse_category(std::string_view name) {
  const std::string lower = utf8::to_lower(name);
  for (const auto c : kAllCategories) {
    if (utf8::to_lower(category_name(c)) == lower) return c;
  }
  return std::nullopt;
}

// Tag emitted by the fallback tagger for each category. Each one maps back
// to its category under the default mapping.
inline std::string_view synthetic_tag(LexicalCategory c) {
  switch (c) {
    case LexicalCategory::kNoun: return "NN";
    case LexicalCategory::kVerb: return "VB";
    case LexicalCategory::kAdjective: return "JJ";
    case LexicalCategory::kAdverb: return "RB";
    case LexicalCategory::kPronoun: return "PR";
    case LexicalCategory::kForeign: return "FW";
    case LexicalCategory::kOther: return "XX";
  }
  return "XX";
}

inline bool is_content_category(LexicalCategory c) {
  return c == LexicalCategory::kNoun || c == LexicalCategory::kVerb ||
         c == LexicalCategory::kAdjective || c == LexicalCategory::kAdverb;
}

struct TaggedToken {
  Token token;
  std::string tag;
  LexicalCategory category = LexicalCategory::kOther;
};

// One line of tagger output. Items keep punctuation entries so the line can
// be written back verbatim; only items that are words count as tokens.
struct TaggedSentence {
  std::vector<TaggedToken> items;
  int phrase_count = 0;

  bool has_words() const {
    return std::any_of(items.begin(), items.end(),
                       [](const TaggedToken& t) { return t.token.is_word(); });
  }
};

struct TaggedDocument {
  std::string id;
  std::vector<TaggedSentence> sentences;
};

/// Prefix table from raw tags to categories. Lookup takes the longest
/// matching prefix; anything unmatched falls to the default category.
class TagsetMapping {
 public:
  TagsetMapping() = default;

  /// NN*, VB*, JJ*, RB*, PR*, FW following the Filipino tagger tag names.
  static TagsetMapping defaults() {
    TagsetMapping m;
    m.add("NN", LexicalCategory::kNoun);
    m.add("VB", LexicalCategory::kVerb);
    m.add("JJ", LexicalCategory::kAdjective);
    m.add("RB", LexicalCategory::kAdverb);
    m.add("PR", LexicalCategory::kPronoun);
    m.add("FW", LexicalCategory::kForeign);
    return m;
  }

  /// Parses `prefix=Category` lines plus an optional `default=Category`.
  /// Blank lines and lines starting with '#' are ignored.
  static TagsetMapping parse(std::string_view config) {
    TagsetMapping m;
    std::istringstream in{std::string(config)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view trimmed = text_detail::trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::kMalformedConfig,
                    "line " + std::to_string(line_no) + ": expected prefix=Category");
      }
      const std::string_view key = text_detail::trim(trimmed.substr(0, eq));
      const std::string_view value = text_detail::trim(trimmed.substr(eq + 1));
      const auto category = parse_category(value);
      if (key.empty() || !category) {
        throw Error(ErrorCode::kMalformedConfig,
                    "line " + std::to_string(line_no) + ": bad entry '" +
                        std::string(trimmed) + "'");
      }
      if (key == "default") {
        m.default_category_ = *category;
      } else {
        m.add(std::string(key), *category);
      }
    }
    return m;
  }

  static TagsetMapping load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kMissingFile, "cannot open tagset mapping " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  void add(std::string prefix, LexicalCategory category) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.first == prefix; });
    if (it != entries_.end()) {
      it->second = category;
      return;
    }
    entries_.emplace_back(std::move(prefix), category);
    std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
      return a.first.size() > b.first.size();
    });
  }

  void set_default(LexicalCategory category) { default_category_ = category; }
  LexicalCategory default_category() const { return default_category_; }
  const std::vector<std::pair<std::string, LexicalCategory>>& entries() const {
    return entries_;
  }

  LexicalCategory map(std::string_view tag) const {
    for (const auto& [prefix, category] : entries_) {
      if (tag.substr(0, prefix.size()) == prefix) return category;
    }
    return default_category_;
  }

 private:
  std::vector<std::pair<std::string, LexicalCategory>> entries_;  // longest first
  LexicalCategory default_category_ = LexicalCategory::kOther;
};

inline LexicalCategory map_category(std::string_view tag, const TagsetMapping& mapping) {
  return mapping.map(tag);
}

namespace pos_detail {

inline int sentence_phrases(const std::vector<TaggedToken>& items) {
  std::string joined;
  bool any_word = false;
  for (const auto& item : items) {
    if (!joined.empty()) joined.push_back(' ');
    joined += item.token.surface;
    any_word = any_word || item.token.is_word();
  }
  return any_word ? segment_phrases(joined) : 0;
}

}  // namespace pos_detail

inline TaggedSentence make_tagged_sentence(std::vector<TaggedToken> items) {
  TaggedSentence s;
  s.items = std::move(items);
  s.phrase_count = pos_detail::sentence_phrases(s.items);
  return s;
}

/// Reads tagger output: one sentence per line, whitespace-separated
/// `word<sep>TAG` items. The tag is everything after the last separator.
/// Blank lines carry no sentence.
inline std::vector<TaggedSentence> parse_tagged(std::string_view text, char separator = '|',
                                                const TagsetMapping& mapping =
                                                    TagsetMapping::defaults()) {
  std::vector<TaggedSentence> sentences;
  std::size_t line_start = 0;
  int line_no = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    ++line_no;
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<TaggedToken> items;
    std::size_t pos = 0;
    int item_no = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      const std::string_view item = line.substr(pos, end - pos);
      ++item_no;
      const auto sep = item.rfind(separator);
      if (sep == std::string_view::npos || sep == 0 || sep + 1 == item.size()) {
        throw Error(ErrorCode::kMalformedItem,
                    "line " + std::to_string(line_no) + ", item " + std::to_string(item_no) +
                        ": '" + std::string(item) + "'");
      }
      TaggedToken tt;
      tt.token = make_token(item.substr(0, sep));
      tt.tag = std::string(item.substr(sep + 1));
      tt.category = mapping.map(tt.tag);
      items.push_back(std::move(tt));
      pos = end;
    }
    if (!items.empty()) sentences.push_back(make_tagged_sentence(std::move(items)));
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return sentences;
}

inline std::string serialize_tagged(const std::vector<TaggedSentence>& sentences,
                                    char separator = '|') {
  std::string out;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += s.items[i].token.surface;
      out.push_back(separator);
      out += s.items[i].tag;
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fallback tagger. Approximate by construction; tagged input is preferred.

inline const std::set<std::string>& default_native_exceptions() {
  static const std::set<std::string> kWords = {
      "filipino", "filipina", "filipinas", "juan", "jose", "josefa", "josefina", "jesus",
      "quezon",   "cebu",     "visayas",   "vigan", "davao", "zamboanga", "zambales",
  };
  return kWords;
}

struct HeuristicOptions {
  std::map<std::string, LexicalCategory> lexicon;  // keyed by normalized form
  std::set<std::string> native_exceptions = default_native_exceptions();
};

/// Parses `word=Category` lines into a lexicon (same syntax as the tagset
/// mapping file, without `default`).
inline std::map<std::string, LexicalCategory> parse_lexicon(std::string_view config) {
  std::map<std::string, LexicalCategory> lexicon;
  const TagsetMapping parsed = TagsetMapping::parse(config);
  for (const auto& [word, category] : parsed.entries()) {
    lexicon[utf8::to_lower(word)] = category;
  }
  return lexicon;
}

inline bool looks_foreign(const Token& token, const std::set<std::string>& native_exceptions =
                                                  default_native_exceptions()) {
  if (native_exceptions.count(token.normalized) > 0) return false;
  return token.normalized.find_first_of("cfjqvxz") != std::string::npos;
}

namespace pos_detail {

inline std::string letters_only(const std::string& normalized) {
  std::string out;
  for (std::size_t pos = 0; pos < normalized.size();) {
    const auto d = utf8::decode(normalized, pos);
    if (utf8::is_letter(d.cp)) out.append(normalized, pos, d.length);
    pos += d.length;
  }
  return out;
}

inline bool has_verb_affix(const Token& token) {
  static constexpr std::array<std::string_view, 6> kPrefixes = {"nag", "mag", "um",
                                                                "na",  "ma",  "i"};
  static constexpr std::array<std::string_view, 2> kSuffixes = {"in", "an"};
  constexpr int kMinStem = 3;
  const std::string word = letters_only(token.normalized);
  for (const auto prefix : kPrefixes) {
    if (word.size() > prefix.size() && std::string_view(word).substr(0, prefix.size()) == prefix &&
        count_letters(std::string_view(word).substr(prefix.size())) >= kMinStem) {
      return true;
    }
  }
  for (const auto suffix : kSuffixes) {
    if (word.size() > suffix.size() &&
        std::string_view(word).substr(word.size() - suffix.size()) == suffix &&
        count_letters(std::string_view(word).substr(0, word.size() - suffix.size())) >=
            kMinStem) {
      return true;
    }
  }
  return false;
}

}  // namespace pos_detail

/// Ordered rules: user lexicon, foreign-letter heuristic, Filipino verb
/// affixes, otherwise Noun. Non-word tokens are tagged Other.
inline std::vector<TaggedToken> heuristic_tag(const std::vector<Token>& tokens,
                                              const HeuristicOptions& options = {}) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    LexicalCategory category = LexicalCategory::kNoun;
    if (!token.is_word()) {
      category = LexicalCategory::kOther;
    } else if (auto it = options.lexicon.find(token.normalized); it != options.lexicon.end()) {
      category = it->second;
    } else if (looks_foreign(token, options.native_exceptions)) {
      category = LexicalCategory::kForeign;
    } else if (pos_detail::has_verb_affix(token)) {
      category = LexicalCategory::kVerb;
    }
    out.push_back(TaggedToken{token, std::string(synthetic_tag(category)), category});
  }
  return out;
}

inline bool detect_foreign(const TaggedToken& tagged) {
  return tagged.category == LexicalCategory::kForeign;
}

inline TaggedDocument tag_document(const Document& doc, const HeuristicOptions& options = {}) {
  TaggedDocument tagged;
  tagged.id = doc.id;
  for (const auto& sentence : doc.sentences) {
    TaggedSentence ts;
    ts.items = heuristic_tag(sentence.tokens, options);
    ts.phrase_count = sentence.phrase_count;
    tagged.sentences.push_back(std::move(ts));
  }
  return tagged;
}

inline TaggedDocument make_tagged_document(std::string id, std::string_view tagged_text,
                                           char separator = '|',
                                           const TagsetMapping& mapping =
                                               TagsetMapping::defaults()) {
  TaggedDocument doc;
  doc.id = std::move(id);
  doc.sentences = parse_tagged(tagged_text, separator, mapping);
  return doc;
}

}  // namespace basa

#endif  // BASA_POS_HPP_
