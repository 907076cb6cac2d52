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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/prompt.hpp"

namespace mosaic {

using Lexicon = std::vector<std::string>;

/// One phrase per line; blank lines and lines starting with '#' skipped.
Lexicon parse_lexicon(std::string_view content);
Lexicon load_lexicon(const std::filesystem::path& path);

/// Prompt template with `{obj}` and `{sty}` slots, e.g.
/// "{obj} in {sty} style and {obj} in the style of {sty}".
struct PromptTemplate {
  std::string id;
  std::string text;
};

/// Lines of `id<TAB>template`; a line without a tab gets id "t<index>".
std::vector<PromptTemplate> parse_templates(std::string_view content);
std::vector<PromptTemplate> load_templates(const std::filesystem::path& path);
std::vector<PromptTemplate> default_templates();

struct CorpusRecord {
  std::string prompt_text;
  SegmentedPrompt gold;
  std::string template_id;
  std::uint64_t seed = 0;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

/// Draws `count` records. Each record gets its own seed from a splitmix64
/// stream over `seed`; the record's template, classes and styles are drawn
/// uniformly from that record seed. Every record is checked against
/// parse_prompt before it is returned.
///
/// Throws BadTemplate for slot-count mismatches and BadLexicon for phrases
/// the grammar cannot reproduce (connectives, markers, control tokens).
std::vector<CorpusRecord> generate_corpus(
    const Lexicon& classes, const Lexicon& styles,
    const std::vector<PromptTemplate>& templates, std::size_t count,
    std::uint64_t seed);

/// {"prompt":..., "pairs":[[obj, sty], ...], "template_id":..., "seed":...}
std::string to_json_line(const CorpusRecord& record);
CorpusRecord from_json_line(std::string_view line);

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records);
std::vector<CorpusRecord> read_corpus(std::istream& in);

}  // namespace mosaic
