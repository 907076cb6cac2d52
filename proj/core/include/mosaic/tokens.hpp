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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mosaic/prompt.hpp"

namespace mosaic {

using TokenId = std::uint32_t;

inline constexpr TokenId kPairTokenId = 0;
inline constexpr TokenId kSepTokenId = 1;

struct TokenSeq {
  std::vector<TokenId> tokens;
  std::size_t vocab_size = 0;
};

/// Word-level vocabulary for the pair serialization. Ids 0 and 1 are
/// reserved for <PAIR> and <SEP>; words get ids in insertion order.
class Vocabulary {
 public:
  Vocabulary();

  TokenId add(std::string_view word);
  /// Throws InvalidArgument for a word that was never added.
  TokenId id(std::string_view word) const;
  const std::string& word(TokenId id) const;
  std::size_t size() const noexcept { return words_.size(); }

  /// Tokenizes serialize_pairs(sp), adding unseen words.
  TokenSeq encode(const SegmentedPrompt& sp);
  SegmentedPrompt decode(const TokenSeq& seq) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> ids_;
};

/// Per-position output distributions of a decoder plus gold token ids.
struct TokenDistribution {
  std::vector<std::vector<double>> probs;
  std::vector<TokenId> gold;
};

/// Throws InvalidDistribution unless every row is a probability vector
/// (entries >= 0, sum 1 within 1e-6), lengths agree and gold ids are in range.
void validate(const TokenDistribution& td);

struct CrossEntropy {
  /// Mean over positions of -ln p(gold); +inf when zero_gold_probability.
  double loss = 0.0;
  bool zero_gold_probability = false;
};

CrossEntropy token_cross_entropy(const TokenDistribution& td);

}  // namespace mosaic
