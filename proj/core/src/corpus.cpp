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

#include "mosaic/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "mosaic/hashing.hpp"

namespace mosaic {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> lines_of(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

enum class Slot { kObject, kStyle };

struct TemplatePart {
  std::string literal;  // text preceding the slot
  Slot slot;
};

struct CompiledTemplate {
  std::vector<TemplatePart> parts;
  std::string tail;
  std::size_t objects = 0;
  std::size_t styles = 0;
};

CompiledTemplate compile(const PromptTemplate& t) {
  CompiledTemplate out;
  std::string literal;
  std::size_t i = 0;
  while (i < t.text.size()) {
    if (t.text[i] == '{') {
      const std::size_t close = t.text.find('}', i);
      if (close == std::string::npos) {
        throw Error(ErrorKind::kBadTemplate,
                    "template " + t.id + ": unterminated slot");
      }
      const std::string name = t.text.substr(i + 1, close - i - 1);
      Slot slot;
      if (name == "obj") {
        slot = Slot::kObject;
        ++out.objects;
      } else if (name == "sty") {
        slot = Slot::kStyle;
        ++out.styles;
      } else {
        throw Error(ErrorKind::kBadTemplate,
                    "template " + t.id + ": unknown slot {" + name + "}");
      }
      out.parts.push_back({std::move(literal), slot});
      literal.clear();
      i = close + 1;
    } else {
      literal += t.text[i++];
    }
  }
  out.tail = std::move(literal);
  if (out.objects == 0 || out.objects != out.styles) {
    throw Error(ErrorKind::kBadTemplate,
                "template " + t.id + ": " + std::to_string(out.objects) +
                    " object slots vs " + std::to_string(out.styles) +
                    " style slots");
  }
  // Pairs are read back in surface order, so each object slot must be
  // followed by its style slot before the next object begins.
  for (std::size_t k = 0; k < out.parts.size(); ++k) {
    const Slot expected = k % 2 == 0 ? Slot::kObject : Slot::kStyle;
    if (out.parts[k].slot != expected) {
      throw Error(ErrorKind::kBadTemplate,
                  "template " + t.id + ": slots must alternate {obj} {sty}");
    }
  }
  return out;
}

bool has_word(std::string_view phrase, const std::unordered_set<std::string>&
                                           words) {
  std::istringstream in{std::string(phrase)};
  std::string w;
  while (in >> w) {
    if (words.contains(text::to_lower(w))) return true;
  }
  return false;
}

void check_lexicon(const Lexicon& lex, std::string_view name, bool is_style) {
  static const std::unordered_set<std::string> kAny{"and"};
  static const std::unordered_set<std::string> kStyle{"and", "in", "as",
                                                      "styled", "style"};
  if (lex.empty()) {
    throw Error(ErrorKind::kBadLexicon, std::string(name) + " lexicon empty");
  }
  for (const auto& phrase : lex) {
    const bool bad =
        phrase.empty() || text::trim(phrase).size() != phrase.size() ||
        phrase.find_first_of(",;.!?{}") != std::string::npos ||
        phrase.find(kPairToken) != std::string::npos ||
        phrase.find(kSepToken) != std::string::npos ||
        has_word(phrase, is_style ? kStyle : kAny);
    if (bad) {
      throw Error(ErrorKind::kBadLexicon,
                  std::string(name) + " phrase '" + phrase +
                      "' collides with the prompt grammar");
    }
  }
}

}  // namespace

Lexicon parse_lexicon(std::string_view content) {
  Lexicon out;
  for (std::string_view line : lines_of(content)) {
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(read_file(path));
}

std::vector<PromptTemplate> parse_templates(std::string_view content) {
  std::vector<PromptTemplate> out;
  for (std::string_view line : lines_of(content)) {
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      out.push_back({"t" + std::to_string(out.size()),
                     std::string(text::trim(line))});
    } else {
      out.push_back({std::string(text::trim(line.substr(0, tab))),
                     std::string(text::trim(line.substr(tab + 1)))});
    }
  }
  return out;
}

std::vector<PromptTemplate> load_templates(const std::filesystem::path& path) {
  return parse_templates(read_file(path));
}

std::vector<PromptTemplate> default_templates() {
  return {
      {"in-style", "{obj} in {sty} style"},
      {"style-of", "{obj} in the style of {sty}"},
      {"as", "{obj} as {sty}"},
      {"styled-like", "{obj} styled like {sty}"},
      {"two-and", "{obj} in {sty} style and {obj} in the style of {sty}"},
      {"two-comma", "{obj} as {sty}, {obj} styled like {sty}"},
      {"three-mixed",
       "{obj} styled like {sty}; {obj} in {sty} style and {obj} as {sty}"},
  };
}

std::vector<CorpusRecord> generate_corpus(
    const Lexicon& classes, const Lexicon& styles,
    const std::vector<PromptTemplate>& templates, std::size_t count,
    std::uint64_t seed) {
  if (count == 0) return {};
  check_lexicon(classes, "class", false);
  check_lexicon(styles, "style", true);
  if (templates.empty()) {
    throw Error(ErrorKind::kBadTemplate, "no templates");
  }
  std::vector<CompiledTemplate> compiled;
  compiled.reserve(templates.size());
  for (const auto& t : templates) compiled.push_back(compile(t));

  std::vector<CorpusRecord> records;
  records.reserve(count);
  SplitMix64 seeds(seed);
  for (std::size_t n = 0; n < count; ++n) {
    CorpusRecord rec;
    rec.seed = seeds.next();
    SplitMix64 rng(rec.seed);
    const std::size_t ti = rng.bounded(templates.size());
    const CompiledTemplate& ct = compiled[ti];
    rec.template_id = templates[ti].id;

    for (const TemplatePart& part : ct.parts) {
      rec.prompt_text += part.literal;
      if (part.slot == Slot::kObject) {
        const std::string& obj = classes[rng.bounded(classes.size())];
        rec.prompt_text += obj;
        rec.gold.pairs.push_back({obj, {}, rec.gold.pairs.size()});
      } else {
        const std::string& sty = styles[rng.bounded(styles.size())];
        rec.prompt_text += sty;
        rec.gold.pairs.back().style_phrase = sty;
      }
    }
    rec.prompt_text += ct.tail;

    SegmentedPrompt parsed;
    try {
      parsed = parse_prompt(Prompt{rec.prompt_text});
    } catch (const Error& e) {
      throw Error(ErrorKind::kBadTemplate,
                  "template " + rec.template_id + " produced unparsable '" +
                      rec.prompt_text + "': " + e.what());
    }
    if (parsed != rec.gold) {
      throw Error(ErrorKind::kBadTemplate,
                  "template " + rec.template_id + " does not round-trip on '" +
                      rec.prompt_text + "' (got " + serialize_pairs(parsed) +
                      ")");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string to_json_line(const CorpusRecord& record) {
  nlohmann::ordered_json j;
  j["prompt"] = record.prompt_text;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& p : record.gold.pairs) {
    pairs.push_back({p.object_phrase, p.style_phrase});
  }
  j["pairs"] = std::move(pairs);
  j["template_id"] = record.template_id;
  j["seed"] = record.seed;
  return j.dump();
}

CorpusRecord from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformedSequence,
                std::string("corpus line: ") + e.what());
  }
  try {
    CorpusRecord rec;
    rec.prompt_text = j.at("prompt").get<std::string>();
    for (const auto& pair : j.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorKind::kMalformedSequence,
                    "corpus pair must be [object, style]");
      }
      rec.gold.pairs.push_back({pair[0].get<std::string>(),
                                pair[1].get<std::string>(),
                                rec.gold.pairs.size()});
    }
    rec.template_id = j.at("template_id").get<std::string>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    validate(rec.gold);
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformedSequence,
                std::string("corpus record: ") + e.what());
  }
}

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    out.push_back(from_json_line(line));
  }
  return out;
}

}  // namespace mosaic
