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
#include <random>
#include <string>
#include <vector>

#include "mosaic/image.hpp"
#include "mosaic/prompt.hpp"

namespace mosaic::testing {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

inline ImageRGB random_image(Rng& rng, std::uint32_t w, std::uint32_t h) {
  ImageRGB img{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h * 3)};
  for (auto& b : img.data) b = static_cast<std::uint8_t>(uniform(rng, 0, 255));
  return img;
}

/// Mix of sparse noise, rectangles, and occasionally empty / full masks.
inline Mask random_mask(Rng& rng, std::uint32_t w, std::uint32_t h) {
  Mask m(w, h);
  switch (uniform(rng, 0, 5)) {
    case 0:
      break;  // empty
    case 1:
      std::fill(m.bits.begin(), m.bits.end(), 1);
      break;
    case 2: {
      const std::uint32_t density = uniform(rng, 1, 60);
      for (auto& b : m.bits) b = uniform(rng, 0, 99) < density ? 1 : 0;
      break;
    }
    default: {
      const std::uint32_t x0 = uniform(rng, 0, w - 1);
      const std::uint32_t y0 = uniform(rng, 0, h - 1);
      m = Mask::rectangle(w, h, x0, y0, uniform(rng, 1, w - x0),
                          uniform(rng, 1, h - y0));
      if (uniform(rng, 0, 1)) {  // add a stray point
        m.set(uniform(rng, 0, w - 1), uniform(rng, 0, h - 1));
      }
    }
  }
  return m;
}

inline Mask random_nonempty_mask(Rng& rng, std::uint32_t w, std::uint32_t h) {
  Mask m = random_mask(rng, w, h);
  if (m.empty()) m.set(uniform(rng, 0, w - 1), uniform(rng, 0, h - 1));
  return m;
}

/// Phrases over an alphabet that includes spaces, punctuation, angle
/// brackets and multi-byte UTF-8 but never a control token or surrounding
/// whitespace.
inline std::string random_phrase(Rng& rng) {
  static const std::vector<std::string> kPieces{
      "a", "b", "z", "tree", "sky", " ", "  ", "<", ">", "PAIR", "SEP", "-",
      "é", "日本", "'", ",", "and", "in", "style", "<PAI", "R>", "\t"};
  std::string out;
  const std::uint32_t n = uniform(rng, 1, 8);
  for (std::uint32_t i = 0; i < n; ++i) {
    out += kPieces[uniform(rng, 0, static_cast<std::uint32_t>(kPieces.size() - 1))];
  }
  while (out.find("<PAIR>") != std::string::npos ||
         out.find("<SEP>") != std::string::npos) {
    out.replace(out.find('<'), 1, "[");
  }
  std::string trimmed(text::trim(out));
  return trimmed.empty() ? std::string("x") : trimmed;
}

inline SegmentedPrompt random_segmented(Rng& rng) {
  SegmentedPrompt sp;
  const std::uint32_t n = uniform(rng, 1, 6);
  for (std::uint32_t i = 0; i < n; ++i) {
    sp.pairs.push_back({random_phrase(rng), random_phrase(rng), i});
  }
  return sp;
}

}  // namespace mosaic::testing
