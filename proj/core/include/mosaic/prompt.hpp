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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/error.hpp"

namespace mosaic {

inline constexpr std::string_view kPairToken = "<PAIR>";
inline constexpr std::string_view kSepToken = "<SEP>";

struct Prompt {
  std::string text;
};

struct ObjectStylePair {
  std::string object_phrase;
  std::string style_phrase;
  std::size_t ordinal = 0;

  friend bool operator==(const ObjectStylePair&,
                         const ObjectStylePair&) = default;
};

/// Ordered object/style pairs. The object phrases form the segmentation
/// text and the style phrases the stylization text.
struct SegmentedPrompt {
  std::vector<ObjectStylePair> pairs;

  std::vector<std::string> object_phrases() const;
  std::vector<std::string> style_phrases() const;
  /// Style phrases in first-appearance order, duplicates removed.
  std::vector<std::string> distinct_styles() const;

  friend bool operator==(const SegmentedPrompt&,
                         const SegmentedPrompt&) = default;
};

/// Builds a prompt from (object, style) tuples, assigning ordinals 0..n-1.
SegmentedPrompt make_segmented(
    std::initializer_list<std::pair<std::string, std::string>> pairs);

/// Throws IllegalPhrase / MalformedSequence when an invariant is violated.
void validate(const SegmentedPrompt& sp);

struct GrammarConfig {
  std::vector<std::string> connective_words{"and"};
  std::string connective_chars{",;"};
  /// A clause with no style marker ("tree and sky in ink style") takes the
  /// style of the next styled clause.
  bool inherit_style = true;
};

/// One parsed pair plus where its phrases started in the prompt text.
struct ParsedPair {
  ObjectStylePair pair;
  std::size_t object_offset = 0;
  std::size_t style_offset = 0;
};

/// Raised for clauses with two readings whose markers start at the same word.
class AmbiguousClauseError : public Error {
 public:
  AmbiguousClauseError(std::string clause,
                       std::vector<ObjectStylePair> readings);

  const std::string& clause() const noexcept { return clause_; }
  const std::vector<ObjectStylePair>& readings() const noexcept {
    return readings_;
  }

 private:
  std::string clause_;
  std::vector<ObjectStylePair> readings_;
};

/// Deterministic grammar:
///   prompt  := clause (connective clause)*
///   connective := "and" | "," | ";"
///   clause  := object marker-phrase | object
///   marker-phrase := "in" style "style" | "in the style of" style
///                  | "as" style | "styled like" style
/// Markers are matched case-insensitively on word boundaries. When a clause
/// holds several marker occurrences the right-most one splits it, so object
/// phrases may carry position descriptions such as "in the image".
std::vector<ParsedPair> parse_prompt_detailed(const Prompt& prompt,
                                              const GrammarConfig& grammar = {});

SegmentedPrompt parse_prompt(const Prompt& prompt,
                             const GrammarConfig& grammar = {});

/// `obj0 <PAIR> sty0 <SEP> obj1 <PAIR> sty1 ...`
std::string serialize_pairs(const SegmentedPrompt& sp);

SegmentedPrompt deserialize_pairs(std::string_view serialized);

/// Source of segmentations. The grammar is the default; an external model
/// may be plugged in through ExternalSegmenter.
class PromptSegmenter {
 public:
  virtual ~PromptSegmenter() = default;
  virtual SegmentedPrompt segment(const Prompt& prompt) const = 0;
};

class GrammarSegmenter final : public PromptSegmenter {
 public:
  explicit GrammarSegmenter(GrammarConfig grammar = {})
      : grammar_(std::move(grammar)) {}
  SegmentedPrompt segment(const Prompt& prompt) const override;

 private:
  GrammarConfig grammar_;
};

/// Wraps a function returning the serialized pair string (e.g. a neural
/// segmenter or a remote LLM); its output is checked by deserialize_pairs.
class ExternalSegmenter final : public PromptSegmenter {
 public:
  using Fn = std::function<std::string(std::string_view prompt)>;
  explicit ExternalSegmenter(Fn fn) : fn_(std::move(fn)) {}
  SegmentedPrompt segment(const Prompt& prompt) const override;

 private:
  Fn fn_;
};

namespace text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace text

}  // namespace mosaic
