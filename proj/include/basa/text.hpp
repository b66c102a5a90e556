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

// Sentence, phrase and token segmentation plus orthographic syllable
// counting for Filipino text.
//
// Rules:
//  * A sentence ends at a run of '.', '!', '?' (or U+2026) followed by
//    whitespace or end of input. Segments without any word are dropped.
//  * A token is a maximal run of letters; a hyphen or apostrophe between two
//    letters joins the runs ("mag-aral", "ng'ayon").
//  * A phrase is a segment delimited by ',', ';', ':', en or em dash that
//    holds at least one token.
//  * Every vowel letter is its own syllable nucleus (Filipino hiatus:
//    "paano" is pa-a-no). A word with letters but no vowel counts as one.

#ifndef BASA_TEXT_HPP_
#define BASA_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "basa/detail/utf8.hpp"

namespace basa {

inline constexpr int kDefaultPolysyllabicThreshold = 6;

struct Token {
  std::string surface;
  std::string normalized;  // case-folded surface
  int syllable_count = 0;  // >= 1 whenever char_length > 0
  int char_length = 0;     // letters only

  bool is_word() const { return char_length > 0; }

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string text;
  std::vector<Token> tokens;
  int phrase_count = 0;
};

struct Document {
  std::string id;
  std::string raw_text;
  std::vector<Sentence> sentences;
};

namespace text_detail {

inline bool is_terminator(char32_t cp) {
  return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026;
}

inline bool is_joiner(char32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019 || cp == 0x2010 || cp == 0x2011;
}

inline bool is_phrase_delimiter(char32_t cp) {
  return cp == ',' || cp == ';' || cp == ':' || cp == 0x2013 || cp == 0x2014;
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e) {
    const auto d = utf8::decode(s, b);
    if (!utf8::is_whitespace(d.cp)) break;
    b += d.length;
  }
  // Trailing whitespace handled bytewise: all whitespace we strip here is
  // ASCII or starts with a non-continuation byte we can walk back to.
  while (e > b) {
    std::size_t start = e - 1;
    while (start > b && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
    const auto d = utf8::decode(s, start);
    if (!utf8::is_whitespace(d.cp)) break;
    e = start;
  }
  return s.substr(b, e - b);
}

}  // namespace text_detail

/// Letters-only counts of a word: syllables via vowel nuclei.
inline int count_syllables(std::string_view word) {
  int letters = 0;
  int vowels = 0;
  for (std::size_t pos = 0; pos < word.size();) {
    const auto d = utf8::decode(word, pos);
    if (utf8::is_letter(d.cp)) {
      ++letters;
      if (utf8::base_vowel(d.cp) != 0) ++vowels;
    }
    pos += d.length;
  }
  if (letters == 0) return 0;
  return vowels == 0 ? 1 : vowels;
}

inline int count_syllables(const Token& token) { return token.syllable_count; }

inline int count_letters(std::string_view word) {
  int letters = 0;
  for (std::size_t pos = 0; pos < word.size();) {
    const auto d = utf8::decode(word, pos);
    if (utf8::is_letter(d.cp)) ++letters;
    pos += d.length;
  }
  return letters;
}

inline Token make_token(std::string_view surface) {
  Token t;
  t.surface = std::string(surface);
  t.normalized = utf8::to_lower(surface);
  t.char_length = count_letters(surface);
  t.syllable_count = count_syllables(surface);
  return t;
}

inline bool is_polysyllabic(const Token& token,
                            int threshold = kDefaultPolysyllabicThreshold) {
  return token.syllable_count > threshold;
}

inline std::vector<Token> tokenize(std::string_view sentence_text) {
  std::vector<Token> tokens;
  const std::string_view s = sentence_text;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto d = utf8::decode(s, pos);
    if (!utf8::is_letter(d.cp)) {
      pos += d.length;
      continue;
    }
    const std::size_t start = pos;
    std::size_t end = pos + d.length;
    pos = end;
    while (pos < s.size()) {
      d = utf8::decode(s, pos);
      if (utf8::is_letter(d.cp)) {
        pos += d.length;
        end = pos;
        continue;
      }
      if (text_detail::is_joiner(d.cp) && pos + d.length < s.size()) {
        const auto next = utf8::decode(s, pos + d.length);
        if (utf8::is_letter(next.cp)) {
          pos += d.length + next.length;
          end = pos;
          continue;
        }
      }
      break;
    }
    tokens.push_back(make_token(s.substr(start, end - start)));
  }
  return tokens;
}

/// Number of delimiter-separated segments holding at least one token,
/// floored at 1.
inline int segment_phrases(std::string_view sentence_text) {
  int phrases = 0;
  std::size_t seg_start = 0;
  auto close_segment = [&](std::size_t seg_end) {
    if (!tokenize(sentence_text.substr(seg_start, seg_end - seg_start)).empty()) {
      ++phrases;
    }
  };
  for (std::size_t pos = 0; pos < sentence_text.size();) {
    const auto d = utf8::decode(sentence_text, pos);
    if (text_detail::is_phrase_delimiter(d.cp)) {
      close_segment(pos);
      seg_start = pos + d.length;
    }
    pos += d.length;
  }
  close_segment(sentence_text.size());
  return phrases == 0 ? 1 : phrases;
}

inline Sentence make_sentence(std::string_view sentence_text) {
  Sentence sentence;
  sentence.text = std::string(text_detail::trim(sentence_text));
  sentence.tokens = tokenize(sentence.text);
  sentence.phrase_count = segment_phrases(sentence.text);
  return sentence;
}

inline std::vector<Sentence> segment_sentences(std::string_view text) {
  std::vector<Sentence> sentences;
  auto emit = [&](std::size_t begin, std::size_t end) {
    Sentence s = make_sentence(text.substr(begin, end - begin));
    if (!s.tokens.empty()) sentences.push_back(std::move(s));
  };
  std::size_t start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = utf8::decode(text, pos);
    if (!text_detail::is_terminator(d.cp)) {
      pos += d.length;
      continue;
    }
    while (pos < text.size()) {
      d = utf8::decode(text, pos);
      if (!text_detail::is_terminator(d.cp)) break;
      pos += d.length;
    }
    const bool boundary =
        pos >= text.size() || utf8::is_whitespace(utf8::decode(text, pos).cp);
    if (boundary) {
      emit(start, pos);
      start = pos;
    }
  }
  if (start < text.size()) emit(start, text.size());
  return sentences;
}

inline Document make_document(std::string id, std::string raw_text) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = std::move(raw_text);
  doc.sentences = segment_sentences(doc.raw_text);
  return doc;
}

}  // namespace basa

#endif  // BASA_TEXT_HPP_
