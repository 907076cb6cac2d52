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

#include "mosaic/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mosaic/error.hpp"
#include "mosaic/hashing.hpp"
#include "mosaic/parallel.hpp"

namespace mosaic {

double clip_similarity(const Embedding& image_embedding,
                       const Embedding& text_embedding) {
  if (image_embedding.values().size() != text_embedding.values().size()) {
    throw Error(ErrorKind::kDimensionMismatch, "embedding widths differ");
  }
  return std::clamp(dot(image_embedding, text_embedding), 0.0, 1.0);
}

std::uint32_t crop_side(const BBox& bbox) {
  const std::uint32_t short_extent = std::min(bbox.width(), bbox.height());
  if (short_extent < kMinCropSide) return short_extent;
  const std::uint32_t half = (short_extent + 1) / 2;  // round(0.5 * m)
  return std::clamp(half, kMinCropSide, short_extent);
}

std::string crop_rule() {
  return "side=clamp(round(0.5*min(w,h)),16,min(w,h)); side=min(w,h) if "
         "min(w,h)<16";
}

std::vector<CropRect> sample_crops(const BBox& bbox, std::size_t n,
                                   std::uint64_t seed, std::size_t ordinal) {
  const std::uint32_t side = crop_side(bbox);
  SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (ordinal + 1)));
  std::vector<CropRect> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = bbox.x0 + static_cast<std::uint32_t>(
                                 rng.bounded(bbox.width() - side + 1));
    const auto y = bbox.y0 + static_cast<std::uint32_t>(
                                 rng.bounded(bbox.height() - side + 1));
    out.push_back({x, y, side});
  }
  return out;
}

ScoreReport patchwise_clip_score(const ImageRGB& img,
                                 const SegmentedPrompt& pairs,
                                 const std::vector<Mask>& masks,
                                 const ModelBackend& text_backend,
                                 const ModelBackend& image_backend,
                                 std::uint64_t seed,
                                 const ScoreOptions& options) {
  validate(img);
  if (masks.size() != pairs.pairs.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::to_string(masks.size()) + " masks for " +
                    std::to_string(pairs.pairs.size()) + " pairs");
  }
  for (const auto& m : masks) {
    if (!m.same_size(img) || m.bits.size() != img.pixel_count()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "mask " + std::to_string(m.width) + "x" +
                      std::to_string(m.height) + " on a " +
                      std::to_string(img.width) + "x" +
                      std::to_string(img.height) + " image");
    }
  }
  if (options.crops_per_object == 0) {
    throw Error(ErrorKind::kInvalidArgument, "crops_per_object must be >= 1");
  }

  std::map<std::string, Embedding> style_embeddings;
  for (const auto& style : pairs.distinct_styles()) {
    style_embeddings.emplace(style, text_backend.encode_text(style));
  }

  ScoreReport report;
  report.seed = seed;
  report.crops_per_object = options.crops_per_object;
  report.scale = options.scale;
  report.crop_rule = crop_rule();
  report.per_object.resize(pairs.pairs.size());

  parallel_for(pairs.pairs.size(), options.workers, [&](std::size_t i) {
    const ObjectStylePair& pair = pairs.pairs[i];
    ObjectScore& obj = report.per_object[i];
    obj.object_phrase = pair.object_phrase;
    obj.style_phrase = pair.style_phrase;
    obj.ordinal = pair.ordinal;
    if (masks[i].empty()) {
      obj.status = std::string(to_string(ErrorKind::kEmptyMask));
      return;
    }
    obj.bbox = mask_bbox(masks[i]);
    obj.crops = sample_crops(*obj.bbox, options.crops_per_object, seed,
                             pair.ordinal);
    const Embedding& text = style_embeddings.at(pair.style_phrase);
    double sum = 0.0;
    for (const CropRect& c : obj.crops) {
      const Embedding e = image_backend.embed_image(crop(img, c.x, c.y, c.side));
      const double s = options.scale * clip_similarity(e, text);
      obj.scores.push_back(s);
      sum += s;
    }
    obj.mean = sum / static_cast<double>(obj.scores.size());
  });

  double total = 0.0;
  std::size_t scored = 0;
  for (const auto& obj : report.per_object) {
    if (!obj.mean) continue;
    total += *obj.mean;
    ++scored;
  }
  if (scored > 0) report.aggregate = total / static_cast<double>(scored);
  return report;
}

nlohmann::ordered_json to_json(const ScoreReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["seed"] = report.seed;
  j["crops_per_object"] = report.crops_per_object;
  j["crop_rule"] = report.crop_rule;
  j["scale"] = report.scale;
  j["aggregate"] =
      report.aggregate ? ordered_json(*report.aggregate) : ordered_json(nullptr);
  ordered_json objects = ordered_json::array();
  for (const auto& o : report.per_object) {
    ordered_json oj;
    oj["ordinal"] = o.ordinal;
    oj["object"] = o.object_phrase;
    oj["style"] = o.style_phrase;
    oj["status"] = o.status;
    if (o.bbox) {
      oj["bbox"] = {o.bbox->x0, o.bbox->y0, o.bbox->x1, o.bbox->y1};
    } else {
      oj["bbox"] = nullptr;
    }
    ordered_json crops = ordered_json::array();
    for (const auto& c : o.crops) crops.push_back({c.x, c.y, c.side});
    oj["crops"] = std::move(crops);
    oj["scores"] = o.scores;
    oj["mean"] = o.mean ? ordered_json(*o.mean) : ordered_json(nullptr);
    objects.push_back(std::move(oj));
  }
  j["per_object"] = std::move(objects);
  return j;
}

ScoreReport report_from_json(const nlohmann::json& j) {
  try {
    ScoreReport r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.crops_per_object = j.at("crops_per_object").get<std::size_t>();
    r.crop_rule = j.at("crop_rule").get<std::string>();
    r.scale = j.at("scale").get<double>();
    if (!j.at("aggregate").is_null()) r.aggregate = j["aggregate"].get<double>();
    for (const auto& oj : j.at("per_object")) {
      ObjectScore o;
      o.ordinal = oj.at("ordinal").get<std::size_t>();
      o.object_phrase = oj.at("object").get<std::string>();
      o.style_phrase = oj.at("style").get<std::string>();
      o.status = oj.at("status").get<std::string>();
      if (!oj.at("bbox").is_null()) {
        const auto b = oj["bbox"].get<std::vector<std::uint32_t>>();
        if (b.size() != 4) throw Error(ErrorKind::kBadResponse, "bbox arity");
        o.bbox = BBox{b[0], b[1], b[2], b[3]};
      }
      for (const auto& c : oj.at("crops")) {
        o.crops.push_back({c.at(0).get<std::uint32_t>(),
                           c.at(1).get<std::uint32_t>(),
                           c.at(2).get<std::uint32_t>()});
      }
      o.scores = oj.at("scores").get<std::vector<double>>();
      if (!oj.at("mean").is_null()) o.mean = oj["mean"].get<double>();
      r.per_object.push_back(std::move(o));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMissingArtifacts,
                std::string("malformed score report: ") + e.what());
  }
}

}  // namespace mosaic
