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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "mosaic/error.hpp"
#include "mosaic/evaluator.hpp"
#include "support/fake_backends.hpp"
#include "support/generators.hpp"

namespace mosaic {
namespace {

using testing::basis;

TEST(ClipSimilarity, Examples) {
  const Embedding e1 = basis(0, EmbeddingSource::kText);
  EXPECT_EQ(clip_similarity(e1, e1), 1.0);
  EXPECT_EQ(clip_similarity(e1, basis(1, EmbeddingSource::kText)), 0.0);
  std::vector<double> v(kEmbeddingDim, 0.0);
  v[0] = v[1] = std::sqrt(2.0) / 2.0;
  const Embedding e2 = Embedding::from_values(v, EmbeddingSource::kImageCrop);
  EXPECT_NEAR(clip_similarity(e2, e1), 0.707107, 1e-6);
  std::vector<double> neg(kEmbeddingDim, 0.0);
  neg[0] = -1.0;
  EXPECT_EQ(clip_similarity(Embedding::from_values(neg, EmbeddingSource::kImageCrop), e1), 0.0);
}

TEST(CropSide, Rule) {
  EXPECT_EQ(crop_side({10, 20, 109, 79}), 30u);  // 100 x 60
  EXPECT_EQ(crop_side({0, 0, 9, 9}), 10u);       // 10 x 10
  EXPECT_EQ(crop_side({0, 0, 0, 0}), 1u);
  EXPECT_EQ(crop_side({0, 0, 15, 15}), 16u);     // 16 -> half 8 -> floor 16
  EXPECT_EQ(crop_side({0, 0, 30, 99}), 16u);     // 31 -> 15.5 rounds to 16
  EXPECT_EQ(crop_side({0, 0, 32, 99}), 17u);     // 33 -> 16.5 rounds to 17
  EXPECT_EQ(crop_side({0, 0, 39, 39}), 20u);
}

TEST(SampleCrops, FrozenOracle) {
  const std::vector<CropRect> expected{{43, 43, 30}, {45, 39, 30}, {77, 48, 30},
                                       {78, 49, 30}, {78, 33, 30}, {48, 49, 30},
                                       {71, 48, 30}, {30, 28, 30}};
  EXPECT_EQ(sample_crops({10, 20, 109, 79}, 8, 42, 0), expected);
  EXPECT_EQ(sample_crops({0, 0, 9, 9}, 8, 42, 1),
            std::vector<CropRect>(8, CropRect{0, 0, 10}));
  EXPECT_EQ(sample_crops({5, 5, 5, 5}, 8, 1, 0), std::vector<CropRect>(8, CropRect{5, 5, 1}));
}

TEST(SampleCrops, DeterministicAndOrdinalSensitive) {
  const BBox b{0, 0, 199, 149};
  EXPECT_EQ(sample_crops(b, 8, 7, 0), sample_crops(b, 8, 7, 0));
  EXPECT_NE(sample_crops(b, 8, 7, 0), sample_crops(b, 8, 7, 1));
  EXPECT_NE(sample_crops(b, 8, 7, 0), sample_crops(b, 8, 8, 0));
}

TEST(SampleCrops, ContainedInBBox) {
  testing::Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t x0 = testing::uniform(rng, 0, 500);
    const std::uint32_t y0 = testing::uniform(rng, 0, 500);
    const BBox b{x0, y0, x0 + testing::uniform(rng, 0, 300), y0 + testing::uniform(rng, 0, 300)};
    for (const CropRect& c : sample_crops(b, 8, rng(), testing::uniform(rng, 0, 9))) {
      ASSERT_GE(c.x, b.x0);
      ASSERT_GE(c.y, b.y0);
      ASSERT_LE(c.x + c.side - 1, b.x1);
      ASSERT_LE(c.y + c.side - 1, b.y1);
      ASSERT_GE(c.side, 1u);
    }
  }
}

// Two solid regions: left half color 1, right half color 2. Crop
// embeddings are basis vectors indexed by the crop's first red byte.
struct TwoRegionScene {
  ImageRGB img = [] {
    ImageRGB im = ImageRGB::filled(64, 32, 1, 0, 0);
    for (std::uint32_t y = 0; y < 32; ++y) {
      for (std::uint32_t x = 32; x < 64; ++x) im.pixel(x, y)[0] = 2;
    }
    return im;
  }();
  std::vector<Mask> masks{Mask::rectangle(64, 32, 0, 0, 32, 32),
                          Mask::rectangle(64, 32, 32, 0, 32, 32)};
  testing::ScriptedBackend backend;

  explicit TwoRegionScene(std::map<std::string, std::size_t> style_index) {
    backend.text_hook = [style_index](std::string_view s) {
      return basis(style_index.at(std::string(s)), EmbeddingSource::kText);
    };
    backend.embed_hook = [](const ImageRGB& crop) {
      return basis(crop.data[0], EmbeddingSource::kImageCrop);
    };
  }
};

TEST(PatchwiseScore, IdentityBackendScoresOne) {
  TwoRegionScene scene({{"one", 1}, {"two", 2}});
  const auto sp = make_segmented({{"left", "one"}, {"right", "two"}});
  const auto r = patchwise_clip_score(scene.img, sp, scene.masks, scene.backend,
                                      scene.backend, 5);
  ASSERT_TRUE(r.aggregate);
  EXPECT_EQ(*r.aggregate, 1.0);
  for (const auto& o : r.per_object) {
    EXPECT_EQ(o.scores, std::vector<double>(8, 1.0));
    EXPECT_EQ(o.mean, 1.0);
  }
}

TEST(PatchwiseScore, OrthogonalBackendScoresZero) {
  TwoRegionScene scene({{"one", 7}, {"two", 8}});
  const auto sp = make_segmented({{"left", "one"}, {"right", "two"}});
  const auto r = patchwise_clip_score(scene.img, sp, scene.masks, scene.backend,
                                      scene.backend, 5);
  EXPECT_EQ(r.aggregate, 0.0);
}

TEST(PatchwiseScore, MixedIsHalf) {
  TwoRegionScene scene({{"one", 1}, {"two", 9}});
  const auto sp = make_segmented({{"left", "one"}, {"right", "two"}});
  const auto r = patchwise_clip_score(scene.img, sp, scene.masks, scene.backend,
                                      scene.backend, 5);
  ASSERT_TRUE(r.aggregate);
  EXPECT_NEAR(*r.aggregate, 0.5, 1e-12);
  EXPECT_EQ(r.per_object[0].mean, 1.0);
  EXPECT_EQ(r.per_object[1].mean, 0.0);
}

TEST(PatchwiseScore, EmptyMaskExcludedFromAggregate) {
  TwoRegionScene scene({{"one", 1}, {"two", 2}, {"three", 3}});
  const auto sp = make_segmented({{"left", "one"}, {"right", "two"}, {"ghost", "three"}});
  auto masks = scene.masks;
  masks.push_back(Mask(64, 32));
  const auto r = patchwise_clip_score(scene.img, sp, masks, scene.backend, scene.backend, 5);
  EXPECT_EQ(r.aggregate, 1.0);
  EXPECT_FALSE(r.per_object[2].mean);
  EXPECT_FALSE(r.per_object[2].bbox);
  EXPECT_EQ(r.per_object[2].status, "EmptyMask");
  const auto all_empty = patchwise_clip_score(
      scene.img, make_segmented({{"ghost", "three"}}), {Mask(64, 32)}, scene.backend,
      scene.backend, 5);
  EXPECT_FALSE(all_empty.aggregate);
}

TEST(PatchwiseScore, ScaleMultiplier) {
  TwoRegionScene scene({{"one", 1}, {"two", 2}});
  const auto sp = make_segmented({{"left", "one"}, {"right", "two"}});
  ScoreOptions opts;
  opts.scale = 2.5;
  const auto r = patchwise_clip_score(scene.img, sp, scene.masks, scene.backend,
                                      scene.backend, 5, opts);
  EXPECT_EQ(r.aggregate, 2.5);
  EXPECT_EQ(r.scale, 2.5);
}

class MockScoring : public ::testing::Test {
 protected:
  testing::Rng rng{33};
  ImageRGB img = testing::random_image(rng, 48, 40);
  SegmentedPrompt sp = make_segmented({{"a", "ink"}, {"b", "oil"}, {"c", "ink"}});
  std::vector<Mask> masks{testing::random_nonempty_mask(rng, 48, 40),
                          testing::random_nonempty_mask(rng, 48, 40),
                          testing::random_nonempty_mask(rng, 48, 40)};
  MockBackend mock;
};

TEST_F(MockScoring, ByteIdenticalAcrossRunsAndWorkerCounts) {
  const std::string first =
      to_json(patchwise_clip_score(img, sp, masks, mock, mock, 11)).dump();
  for (std::size_t run = 0; run < 10; ++run) {
    ScoreOptions opts;
    opts.workers = 1 + run % 4;
    EXPECT_EQ(to_json(patchwise_clip_score(img, sp, masks, mock, mock, 11, opts)).dump(),
              first);
  }
  EXPECT_NE(to_json(patchwise_clip_score(img, sp, masks, mock, mock, 12)).dump(), first);
}

TEST_F(MockScoring, RangeAndAggregateAlgebra) {
  const auto r = patchwise_clip_score(img, sp, masks, mock, mock, 3);
  double total = 0.0;
  for (const auto& o : r.per_object) {
    ASSERT_EQ(o.scores.size(), kCropsPerObject);
    for (double s : o.scores) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
    total += *o.mean;
    const BBox tight = mask_bbox(masks[o.ordinal]);
    EXPECT_EQ(*o.bbox, tight);
    for (const auto& c : o.crops) {
      EXPECT_GE(c.x, tight.x0);
      EXPECT_LE(c.x + c.side - 1, tight.x1);
      EXPECT_GE(c.y, tight.y0);
      EXPECT_LE(c.y + c.side - 1, tight.y1);
    }
  }
  EXPECT_NEAR(*r.aggregate, total / 3.0, 1e-9);
  EXPECT_GE(*r.aggregate, 0.0);
  EXPECT_LE(*r.aggregate, 1.0);
}

TEST_F(MockScoring, ExactTextEmbeddingNeverLowersMean) {
  const auto base = patchwise_clip_score(img, sp, masks, mock, mock, 3);
  testing::ScriptedBackend patched;
  patched.embed_hook = [&](const ImageRGB&) { return mock.encode_text("oil"); };
  const auto r = patchwise_clip_score(img, sp, masks, mock, patched, 3);
  EXPECT_GE(*r.per_object[1].mean, *base.per_object[1].mean);
  EXPECT_EQ(*r.per_object[1].mean, 1.0);
}

TEST_F(MockScoring, JsonRoundTrip) {
  const auto r = patchwise_clip_score(img, sp, masks, mock, mock, 3);
  const auto j = to_json(r);
  EXPECT_EQ(to_json(report_from_json(nlohmann::json::parse(j.dump()))).dump(), j.dump());
  EXPECT_EQ(j["crop_rule"], crop_rule());
  EXPECT_EQ(j["seed"], 3);
}

TEST_F(MockScoring, PreconditionErrors) {
  EXPECT_THROW(patchwise_clip_score(img, sp, {masks[0]}, mock, mock, 3), Error);
  try {
    patchwise_clip_score(img, sp, {masks[0], masks[1], Mask(4, 4)}, mock, mock, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace mosaic
