// Copyright 2026 The Mosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mosaic/prompt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <unordered_set>

namespace mosaic {

namespace text {

namespace {
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace text

std::vector<std::string> SegmentedPrompt::object_phrases() const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.object_phrase);
  return out;
}

std::vector<std::string> SegmentedPrompt::style_phrases() const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.style_phrase);
  return out;
}

std::vector<std::string> SegmentedPrompt::distinct_styles() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : pairs) {
    if (seen.insert(p.style_phrase).second) out.push_back(p.style_phrase);
  }
  return out;
}

SegmentedPrompt make_segmented(
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  SegmentedPrompt sp;
  for (const auto& [obj, sty] : pairs) {
    sp.pairs.push_back({obj, sty, sp.pairs.size()});
  }
  return sp;
}

namespace {

void check_phrase(std::string_view phrase, std::string_view role) {
  if (phrase.empty()) {
    throw Error(ErrorKind::kIllegalPhrase,
                "empty " + std::string(role) + " phrase");
  }
  if (phrase.find(kPairToken) != std::string_view::npos ||
      phrase.find(kSepToken) != std::string_view::npos) {
    throw Error(ErrorKind::kIllegalPhrase,
                std::string(role) + " phrase '" + std::string(phrase) +
                    "' contains a control token");
  }
  if (text::trim(phrase).size() != phrase.size()) {
    throw Error(ErrorKind::kIllegalPhrase,
                std::string(role) + " phrase '" + std::string(phrase) +
                    "' has surrounding whitespace");
  }
}

}  // namespace

void validate(const SegmentedPrompt& sp) {
  if (sp.pairs.empty()) {
    throw Error(ErrorKind::kMalformedSequence, "no pairs");
  }
  for (std::size_t i = 0; i < sp.pairs.size(); ++i) {
    const auto& p = sp.pairs[i];
    if (p.ordinal != i) {
      throw Error(ErrorKind::kMalformedSequence,
                  "ordinal " + std::to_string(p.ordinal) + " at position " +
                      std::to_string(i));
    }
    check_phrase(p.object_phrase, "object");
    check_phrase(p.style_phrase, "style");
  }
}

// ---------------------------------------------------------------------------
// Grammar parser

namespace {

struct Word {
  std::string_view text;
  std::string lower;
  std::size_t offset;  // into the prompt
};

struct Clause {
  std::vector<Word> words;
};

enum class Marker { kInTheStyleOf, kInStyle, kStyledLike, kAs };

struct Reading {
  Marker marker;
  std::size_t position;  // word index of the marker's first word
  std::size_t object_end;
  std::size_t style_begin;
  std::size_t style_end;
};

bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string join_words(const std::vector<Word>& words, std::size_t begin,
                       std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i != begin) out += ' ';
    out += words[i].text;
  }
  return out;
}

std::vector<Clause> split_clauses(std::string_view prompt,
                                  const GrammarConfig& grammar) {
  std::unordered_set<std::string> connectives;
  for (const auto& w : grammar.connective_words) {
    connectives.insert(text::to_lower(w));
  }

  std::vector<Clause> clauses(1);
  std::size_t i = 0;
  while (i < prompt.size()) {
    const char c = prompt[i];
    if (is_space_char(c)) {
      ++i;
      continue;
    }
    if (grammar.connective_chars.find(c) != std::string::npos) {
      clauses.emplace_back();
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < prompt.size() && !is_space_char(prompt[j]) &&
           grammar.connective_chars.find(prompt[j]) == std::string::npos) {
      ++j;
    }
    Word w{prompt.substr(i, j - i), text::to_lower(prompt.substr(i, j - i)),
           i};
    if (connectives.contains(w.lower)) {
      clauses.emplace_back();
    } else {
      clauses.back().words.push_back(std::move(w));
    }
    i = j;
  }
  std::erase_if(clauses, [](const Clause& cl) { return cl.words.empty(); });
  return clauses;
}

std::vector<Reading> find_readings(const std::vector<Word>& w) {
  std::vector<Reading> readings;
  const std::size_t n = w.size();
  for (std::size_t i = 1; i < n; ++i) {
    const std::string& cur = w[i].lower;
    if (cur == "in") {
      if (i + 4 < n && w[i + 1].lower == "the" && w[i + 2].lower == "style" &&
          w[i + 3].lower == "of") {
        readings.push_back({Marker::kInTheStyleOf, i, i, i + 4, n});
      }
      if (n >= 2 && i + 1 < n - 1 && w[n - 1].lower == "style") {
        readings.push_back({Marker::kInStyle, i, i, i + 1, n - 1});
      }
    } else if (cur == "styled") {
      if (i + 2 < n && w[i + 1].lower == "like") {
        readings.push_back({Marker::kStyledLike, i, i, i + 2, n});
      }
    } else if (cur == "as") {
      if (i + 1 < n) readings.push_back({Marker::kAs, i, i, i + 1, n});
    }
  }
  return readings;
}

std::string_view strip_terminal_punctuation(std::string_view s) {
  s = text::trim(s);
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?')) {
    s.remove_suffix(1);
    s = text::trim(s);
  }
  return s;
}

}  // namespace

AmbiguousClauseError::AmbiguousClauseError(
    std::string clause, std::vector<ObjectStylePair> readings)
    : Error(ErrorKind::kAmbiguousClause,
            [&] {
              std::string msg = "'" + clause + "' has " +
                                std::to_string(readings.size()) + " readings:";
              for (const auto& r : readings) {
                msg += " (" + r.object_phrase + " | " + r.style_phrase + ")";
              }
              return msg;
            }()),
      clause_(std::move(clause)),
      readings_(std::move(readings)) {}

std::vector<ParsedPair> parse_prompt_detailed(const Prompt& prompt,
                                              const GrammarConfig& grammar) {
  const std::string_view body = strip_terminal_punctuation(prompt.text);
  if (body.empty()) throw Error(ErrorKind::kEmptyPrompt, "blank prompt");

  // Offsets are relative to prompt.text; body is a view into it.
  const std::size_t base =
      static_cast<std::size_t>(body.data() - prompt.text.data());
  std::vector<Clause> clauses = split_clauses(body, grammar);
  for (auto& cl : clauses) {
    for (auto& w : cl.words) w.offset += base;
  }

  std::vector<ParsedPair> out;
  std::vector<const Clause*> pending;  // bare objects awaiting a style
  bool any_styled = false;

  for (const Clause& cl : clauses) {
    std::vector<Reading> readings = find_readings(cl.words);
    if (readings.empty()) {
      if (!grammar.inherit_style) {
        throw Error(ErrorKind::kUnstyledClause,
                    "clause '" + join_words(cl.words, 0, cl.words.size()) +
                        "' has no style marker");
      }
      pending.push_back(&cl);
      continue;
    }
    std::size_t rightmost = 0;
    for (const auto& r : readings) rightmost = std::max(rightmost, r.position);
    std::vector<Reading> chosen;
    for (const auto& r : readings) {
      if (r.position == rightmost) chosen.push_back(r);
    }
    if (chosen.size() > 1) {
      std::vector<ObjectStylePair> alternatives;
      for (const auto& r : chosen) {
        alternatives.push_back({join_words(cl.words, 0, r.object_end),
                                join_words(cl.words, r.style_begin, r.style_end),
                                out.size()});
      }
      throw AmbiguousClauseError(join_words(cl.words, 0, cl.words.size()),
                                 std::move(alternatives));
    }
    const Reading& r = chosen.front();
    std::string style = join_words(cl.words, r.style_begin, r.style_end);
    const std::size_t style_offset = cl.words[r.style_begin].offset;
    for (const Clause* bare : pending) {
      out.push_back({{join_words(bare->words, 0, bare->words.size()), style,
                      out.size()},
                     bare->words.front().offset,
                     style_offset});
    }
    pending.clear();
    out.push_back({{join_words(cl.words, 0, r.object_end), std::move(style),
                    out.size()},
                   cl.words.front().offset,
                   style_offset});
    any_styled = true;
  }

  if (!any_styled) {
    throw Error(ErrorKind::kNoPairsFound,
                "no clause of '" + std::string(body) +
                    "' contains a style marker");
  }
  if (!pending.empty()) {
    throw Error(ErrorKind::kUnstyledClause,
                "trailing clause '" +
                    join_words(pending.front()->words, 0,
                               pending.front()->words.size()) +
                    "' has no style to inherit");
  }
  for (const auto& p : out) {
    if (p.pair.object_phrase.find(kPairToken) != std::string::npos ||
        p.pair.object_phrase.find(kSepToken) != std::string::npos ||
        p.pair.style_phrase.find(kPairToken) != std::string::npos ||
        p.pair.style_phrase.find(kSepToken) != std::string::npos) {
      throw Error(ErrorKind::kIllegalPhrase,
                  "prompt contains a control token literal");
    }
  }
  return out;
}

SegmentedPrompt parse_prompt(const Prompt& prompt,
                             const GrammarConfig& grammar) {
  SegmentedPrompt sp;
  for (auto& p : parse_prompt_detailed(prompt, grammar)) {
    sp.pairs.push_back(std::move(p.pair));
  }
  return sp;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_pairs(const SegmentedPrompt& sp) {
  validate(sp);
  std::string out;
  for (const auto& p : sp.pairs) {
    if (!out.empty()) {
      out += ' ';
      out += kSepToken;
      out += ' ';
    }
    out += p.object_phrase;
    out += ' ';
    out += kPairToken;
    out += ' ';
    out += p.style_phrase;
  }
  return out;
}

namespace {

std::vector<std::string_view> split_on(std::string_view s,
                                       std::string_view delim) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + delim.size();
  }
}

}  // namespace

SegmentedPrompt deserialize_pairs(std::string_view serialized) {
  if (text::trim(serialized).empty()) {
    throw Error(ErrorKind::kMalformedSequence, "empty sequence");
  }
  SegmentedPrompt sp;
  const auto segments = split_on(serialized, kSepToken);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string_view segment = text::trim(segments[i]);
    if (segment.empty()) {
      throw Error(ErrorKind::kMalformedSequence,
                  i + 1 == segments.size() ? "dangling <SEP>"
                                           : "empty pair at index " +
                                                 std::to_string(i));
    }
    const auto halves = split_on(segment, kPairToken);
    if (halves.size() != 2) {
      throw Error(ErrorKind::kMalformedSequence,
                  "pair " + std::to_string(i) + " has " +
                      std::to_string(halves.size()) +
                      " segments, expected object <PAIR> style");
    }
    const std::string_view obj = text::trim(halves[0]);
    const std::string_view sty = text::trim(halves[1]);
    if (obj.empty() || sty.empty()) {
      throw Error(ErrorKind::kMalformedSequence,
                  "pair " + std::to_string(i) + " has an empty phrase");
    }
    sp.pairs.push_back({std::string(obj), std::string(sty), i});
  }
  return sp;
}

SegmentedPrompt GrammarSegmenter::segment(const Prompt& prompt) const {
  return parse_prompt(prompt, grammar_);
}

SegmentedPrompt ExternalSegmenter::segment(const Prompt& prompt) const {
  if (text::trim(prompt.text).empty()) {
    throw Error(ErrorKind::kEmptyPrompt, "blank prompt");
  }
  SegmentedPrompt sp = deserialize_pairs(fn_(prompt.text));
  validate(sp);
  return sp;
}

}  // namespace mosaic
