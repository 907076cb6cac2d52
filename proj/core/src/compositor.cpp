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

#include "mosaic/compositor.hpp"

#include <algorithm>

#include "mosaic/error.hpp"

namespace mosaic {

OverlapPolicy parse_overlap_policy(std::string_view text) {
  if (text == "last-wins") return OverlapPolicy::kLastWins;
  if (text == "first-wins") return OverlapPolicy::kFirstWins;
  throw Error(ErrorKind::kConfigError,
              "overlap policy '" + std::string(text) +
                  "' (expected last-wins|first-wins)");
}

std::string to_string(OverlapPolicy policy) {
  return policy == OverlapPolicy::kLastWins ? "last-wins" : "first-wins";
}

void parse_uncovered_policy(std::string_view text, CompositePolicy& policy) {
  constexpr std::string_view kBackground = "background:";
  if (text == "content") {
    policy.uncovered = UncoveredPolicy::kContentPassthrough;
    policy.background_style.clear();
    return;
  }
  if (text.substr(0, kBackground.size()) == kBackground &&
      text.size() > kBackground.size()) {
    policy.uncovered = UncoveredPolicy::kBackgroundStyle;
    policy.background_style = std::string(text.substr(kBackground.size()));
    return;
  }
  throw Error(ErrorKind::kConfigError,
              "uncovered policy '" + std::string(text) +
                  "' (expected content|background:<style>)");
}

std::string uncovered_to_string(const CompositePolicy& policy) {
  return policy.uncovered == UncoveredPolicy::kContentPassthrough
             ? "content"
             : "background:" + policy.background_style;
}

BBox mask_bbox(const Mask& m) {
  bool found = false;
  BBox box{m.width, m.height, 0, 0};
  for (std::uint32_t y = 0; y < m.height; ++y) {
    for (std::uint32_t x = 0; x < m.width; ++x) {
      if (!m.at(x, y)) continue;
      if (!found) box.y0 = y;
      found = true;
      box.y1 = y;
      box.x0 = std::min(box.x0, x);
      box.x1 = std::max(box.x1, x);
    }
  }
  if (!found) throw Error(ErrorKind::kEmptyMask, "mask has no set bits");
  return box;
}

namespace {

void require_same_dims(const std::vector<Mask>& masks) {
  for (const auto& m : masks) {
    if (m.width != masks.front().width || m.height != masks.front().height ||
        m.bits.size() != m.pixel_count()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "masks " + std::to_string(masks.front().width) + "x" +
                      std::to_string(masks.front().height) + " and " +
                      std::to_string(m.width) + "x" +
                      std::to_string(m.height));
    }
  }
}

}  // namespace

std::vector<Mask> resolve_overlaps(const std::vector<Mask>& masks,
                                   OverlapPolicy policy) {
  if (masks.empty()) return {};
  require_same_dims(masks);
  std::vector<Mask> out = masks;
  const std::size_t n = masks.front().bits.size();
  for (std::size_t p = 0; p < n; ++p) {
    bool claimed = false;
    if (policy == OverlapPolicy::kLastWins) {
      for (std::size_t k = out.size(); k-- > 0;) {
        if (!out[k].bits[p]) continue;
        if (claimed) out[k].bits[p] = 0;
        claimed = true;
      }
    } else {
      for (auto& m : out) {
        if (!m.bits[p]) continue;
        if (claimed) m.bits[p] = 0;
        claimed = true;
      }
    }
  }
  return out;
}

ImageRGB composite(const ImageRGB& content,
                   const std::vector<StyleAssignment>& assignments,
                   const CompositePolicy& policy, const ImageRGB* background) {
  validate(content);
  const ImageRGB* uncovered = &content;
  if (policy.uncovered == UncoveredPolicy::kBackgroundStyle) {
    if (background == nullptr) {
      throw Error(ErrorKind::kInvalidArgument,
                  "background-style policy needs a background frame");
    }
    if (background->width != content.width ||
        background->height != content.height ||
        background->data.size() != content.data.size()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "background frame differs from content size");
    }
    uncovered = background;
  }
  if (assignments.empty()) return *uncovered;

  std::vector<Mask> masks;
  masks.reserve(assignments.size());
  for (const auto& a : assignments) {
    if (!a.mask.same_size(content) || a.styled.width != content.width ||
        a.styled.height != content.height ||
        a.styled.data.size() != content.data.size()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "assignment " + std::to_string(a.ordinal) +
                      " does not match the " + std::to_string(content.width) +
                      "x" + std::to_string(content.height) + " content image");
    }
    masks.push_back(a.mask);
  }
  const std::vector<Mask> resolved = resolve_overlaps(masks, policy.overlap);

  ImageRGB out = *uncovered;
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    const auto& bits = resolved[k].bits;
    const auto& src = assignments[k].styled.data;
    for (std::size_t p = 0; p < bits.size(); ++p) {
      if (!bits[p]) continue;
      std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(3 * p), 3,
                  out.data.begin() + static_cast<std::ptrdiff_t>(3 * p));
    }
  }
  return out;
}

Coverage coverage_report(const std::vector<Mask>& masks) {
  if (masks.empty()) return {};
  require_same_dims(masks);
  const std::size_t n = masks.front().bits.size();
  if (n == 0) return {};
  std::size_t covered = 0;
  std::size_t contested = 0;
  for (std::size_t p = 0; p < n; ++p) {
    int claims = 0;
    for (const auto& m : masks) claims += m.bits[p] ? 1 : 0;
    if (claims >= 1) ++covered;
    if (claims >= 2) ++contested;
  }
  const double area = static_cast<double>(n);
  return {static_cast<double>(covered) / area,
          static_cast<double>(contested) / area};
}

}  // namespace mosaic
