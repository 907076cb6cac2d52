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
#include <cstdint>
#include <string>
#include <vector>

#include "mosaic/image.hpp"

namespace mosaic {

/// Inclusive pixel bounds.
struct BBox {
  std::uint32_t x0 = 0;
  std::uint32_t y0 = 0;
  std::uint32_t x1 = 0;
  std::uint32_t y1 = 0;

  std::uint32_t width() const noexcept { return x1 - x0 + 1; }
  std::uint32_t height() const noexcept { return y1 - y0 + 1; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

enum class OverlapPolicy { kLastWins, kFirstWins };
enum class UncoveredPolicy { kContentPassthrough, kBackgroundStyle };

struct CompositePolicy {
  OverlapPolicy overlap = OverlapPolicy::kLastWins;
  UncoveredPolicy uncovered = UncoveredPolicy::kContentPassthrough;
  /// Style phrase for kBackgroundStyle.
  std::string background_style;
};

/// "last-wins" | "first-wins"
OverlapPolicy parse_overlap_policy(std::string_view text);
std::string to_string(OverlapPolicy policy);
/// "content" | "background:<style>"; sets uncovered and background_style.
void parse_uncovered_policy(std::string_view text, CompositePolicy& policy);
std::string uncovered_to_string(const CompositePolicy& policy);

struct StyleAssignment {
  Mask mask;
  ImageRGB styled;
  std::size_t ordinal = 0;
};

/// Tightest box around the set bits; EmptyMask when none are set.
BBox mask_bbox(const Mask& m);

/// Makes masks pairwise disjoint, preserving their union. A pixel claimed
/// by several masks goes to the one latest in the list (last-wins) or the
/// earliest (first-wins). Output order matches input order.
std::vector<Mask> resolve_overlaps(const std::vector<Mask>& masks,
                                   OverlapPolicy policy);

/// Each output pixel is copied from the styled frame whose resolved mask
/// covers it, otherwise from the content image (passthrough) or from
/// `background` (background-style policy, required then). Hard edges, no
/// blending. Arbitration uses list position, not the ordinal field.
ImageRGB composite(const ImageRGB& content,
                   const std::vector<StyleAssignment>& assignments,
                   const CompositePolicy& policy,
                   const ImageRGB* background = nullptr);

struct Coverage {
  double covered_fraction = 0.0;
  double overlap_fraction = 0.0;
};

/// covered = |union| / area, overlap = |pixels claimed twice or more| / area.
/// An empty list reports (0, 0).
Coverage coverage_report(const std::vector<Mask>& masks);

}  // namespace mosaic
