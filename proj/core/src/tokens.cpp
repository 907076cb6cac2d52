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

#include "mosaic/tokens.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mosaic {

Vocabulary::Vocabulary() {
  add(kPairToken);
  add(kSepToken);
}

TokenId Vocabulary::add(std::string_view word) {
  const std::string key(word);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(words_.size());
  words_.push_back(key);
  ids_.emplace(key, id);
  return id;
}

TokenId Vocabulary::id(std::string_view word) const {
  if (auto it = ids_.find(std::string(word)); it != ids_.end()) {
    return it->second;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "word '" + std::string(word) + "' not in vocabulary");
}

const std::string& Vocabulary::word(TokenId id) const {
  if (id >= words_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "token id " + std::to_string(id) + " out of range");
  }
  return words_[id];
}

TokenSeq Vocabulary::encode(const SegmentedPrompt& sp) {
  TokenSeq seq;
  std::istringstream in(serialize_pairs(sp));
  std::string word;
  while (in >> word) seq.tokens.push_back(add(word));
  seq.vocab_size = size();
  return seq;
}

SegmentedPrompt Vocabulary::decode(const TokenSeq& seq) const {
  std::string serialized;
  for (TokenId t : seq.tokens) {
    if (!serialized.empty()) serialized += ' ';
    serialized += word(t);
  }
  return deserialize_pairs(serialized);
}

void validate(const TokenDistribution& td) {
  if (td.probs.empty()) {
    throw Error(ErrorKind::kInvalidDistribution, "no positions");
  }
  if (td.probs.size() != td.gold.size()) {
    throw Error(ErrorKind::kInvalidDistribution,
                std::to_string(td.probs.size()) + " distributions for " +
                    std::to_string(td.gold.size()) + " gold tokens");
  }
  for (std::size_t pos = 0; pos < td.probs.size(); ++pos) {
    const auto& row = td.probs[pos];
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) {
        throw Error(ErrorKind::kInvalidDistribution,
                    "negative or NaN probability at position " +
                        std::to_string(pos));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw Error(ErrorKind::kInvalidDistribution,
                  "position " + std::to_string(pos) + " sums to " +
                      std::to_string(sum));
    }
    if (td.gold[pos] >= row.size()) {
      throw Error(ErrorKind::kInvalidDistribution,
                  "gold id out of range at position " + std::to_string(pos));
    }
  }
}

CrossEntropy token_cross_entropy(const TokenDistribution& td) {
  validate(td);
  double total = 0.0;
  for (std::size_t pos = 0; pos < td.probs.size(); ++pos) {
    const double p = td.probs[pos][td.gold[pos]];
    if (p == 0.0) {
      return {std::numeric_limits<double>::infinity(), true};
    }
    total -= std::log(p);
  }
  return {total / static_cast<double>(td.probs.size()), false};
}

}  // namespace mosaic
