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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"
#include "mosaic/compositor.hpp"
#include "mosaic/prompt.hpp"

namespace mosaic {

inline constexpr std::size_t kCropsPerObject = 8;
inline constexpr std::uint32_t kMinCropSide = 16;

/// Square crop with top-left corner (x, y).
struct CropRect {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t side = 0;

  friend bool operator==(const CropRect&, const CropRect&) = default;
};

/// max(0, a . b), capped at 1. No 2.5x CLIPScore rescale.
double clip_similarity(const Embedding& image_embedding,
                       const Embedding& text_embedding);

/// Half the short bbox extent (rounded half up), at least 16 px, never more
/// than the short extent; the short extent itself when it is below 16.
std::uint32_t crop_side(const BBox& bbox);

/// Human-readable form of the crop_side rule, recorded in reports.
std::string crop_rule();

/// `n` crops placed uniformly over the valid positions inside `bbox`,
/// drawn from splitmix64(seed ^ 0x9e3779b97f4a7c15 * (ordinal + 1)).
std::vector<CropRect> sample_crops(const BBox& bbox,
                                   std::size_t n = kCropsPerObject,
                                   std::uint64_t seed = 0,
                                   std::size_t ordinal = 0);

struct ObjectScore {
  std::string object_phrase;
  std::string style_phrase;
  std::size_t ordinal = 0;
  std::optional<BBox> bbox;
  std::vector<CropRect> crops;
  std::vector<double> scores;
  /// nullopt when the object's mask was empty (excluded from aggregate).
  std::optional<double> mean;
  std::string status = "ok";
};

struct ScoreReport {
  std::vector<ObjectScore> per_object;
  /// Unweighted mean of per-object means; nullopt if no object scored.
  std::optional<double> aggregate;
  std::uint64_t seed = 0;
  std::size_t crops_per_object = kCropsPerObject;
  double scale = 1.0;
  std::string crop_rule;
};

struct ScoreOptions {
  std::size_t crops_per_object = kCropsPerObject;
  /// Multiplier applied to every crop score (2.5 reproduces CLIPScore).
  double scale = 1.0;
  std::size_t workers = 1;
};

/// Patch-wise CLIP score: for each pair, crops inside the bbox of its mask
/// are embedded by `image_backend` and compared with the style phrase's
/// text embedding from `text_backend`. Output is independent of `workers`.
ScoreReport patchwise_clip_score(const ImageRGB& img,
                                 const SegmentedPrompt& pairs,
                                 const std::vector<Mask>& masks,
                                 const ModelBackend& text_backend,
                                 const ModelBackend& image_backend,
                                 std::uint64_t seed,
                                 const ScoreOptions& options = {});

nlohmann::ordered_json to_json(const ScoreReport& report);
ScoreReport report_from_json(const nlohmann::json& j);

}  // namespace mosaic
