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

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mosaic/compositor.hpp"
#include "mosaic/enc_cache.hpp"
#include "mosaic/pipeline.hpp"
#include "mosaic/prompt.hpp"
#include "mosaic/tokens.hpp"

namespace {

using namespace mosaic;

const char* const kPrompt =
    "a tree on the left in watercolor style, the sky as charcoal and a house "
    "in the style of ukiyo-e; the road styled like neon";

ImageRGB gradient(std::uint32_t w, std::uint32_t h) {
  ImageRGB img = ImageRGB::filled(w, h, 0, 0, 0);
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      const std::size_t o = img.offset(x, y);
      img.data[o] = static_cast<std::uint8_t>(x);
      img.data[o + 1] = static_cast<std::uint8_t>(y);
      img.data[o + 2] = static_cast<std::uint8_t>(x ^ y);
    }
  }
  return img;
}

std::vector<Mask> overlapping_masks(std::uint32_t side, std::size_t n) {
  std::vector<Mask> masks;
  for (std::size_t i = 0; i < n; ++i) {
    const auto off = static_cast<std::uint32_t>(i * side / (2 * n));
    masks.push_back(Mask::rectangle(side, side, off, off, side / 2, side / 2));
  }
  return masks;
}

void BM_ParsePrompt(benchmark::State& state) {
  const Prompt p{kPrompt};
  for (auto _ : state) benchmark::DoNotOptimize(parse_prompt(p));
}
BENCHMARK(BM_ParsePrompt);

void BM_SerializeRoundTrip(benchmark::State& state) {
  const SegmentedPrompt sp = parse_prompt(Prompt{kPrompt});
  for (auto _ : state) benchmark::DoNotOptimize(deserialize_pairs(serialize_pairs(sp)));
}
BENCHMARK(BM_SerializeRoundTrip);

void BM_CrossEntropy(benchmark::State& state) {
  const auto positions = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kVocab = 256;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  TokenDistribution td;
  for (std::size_t i = 0; i < positions; ++i) {
    std::vector<double> row(kVocab);
    double sum = 0.0;
    for (double& v : row) sum += (v = u(rng));
    for (double& v : row) v /= sum;
    td.probs.push_back(std::move(row));
    td.gold.push_back(static_cast<TokenId>(rng() % kVocab));
  }
  for (auto _ : state) benchmark::DoNotOptimize(token_cross_entropy(td));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(positions));
}
BENCHMARK(BM_CrossEntropy)->Arg(16)->Arg(256);

void BM_CacheHit(benchmark::State& state) {
  MockBackend backend;
  EncodingCache cache(8);
  const ImageRGB img = gradient(256, 256);
  cache.get_or_encode(img, backend);
  for (auto _ : state) benchmark::DoNotOptimize(cache.get_or_encode(img, backend));
}
BENCHMARK(BM_CacheHit);

void BM_MaskBBox(benchmark::State& state) {
  const auto side = static_cast<std::uint32_t>(state.range(0));
  const Mask m = Mask::rectangle(side, side, side / 3, side / 4, side / 2, side / 2);
  for (auto _ : state) benchmark::DoNotOptimize(mask_bbox(m));
}
BENCHMARK(BM_MaskBBox)->Arg(256)->Arg(1024);

void BM_ResolveOverlaps(benchmark::State& state) {
  const auto masks = overlapping_masks(512, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resolve_overlaps(masks, OverlapPolicy::kLastWins));
}
BENCHMARK(BM_ResolveOverlaps)->Arg(2)->Arg(8);

void BM_Composite(benchmark::State& state) {
  const std::uint32_t side = 512;
  const ImageRGB content = gradient(side, side);
  const auto masks =
      resolve_overlaps(overlapping_masks(side, 4), OverlapPolicy::kLastWins);
  std::vector<StyleAssignment> assignments;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    assignments.push_back({masks[i],
                           ImageRGB::filled(side, side, static_cast<std::uint8_t>(i * 40), 0, 0),
                           i});
  }
  const CompositePolicy policy{};
  for (auto _ : state) benchmark::DoNotOptimize(composite(content, assignments, policy));
}
BENCHMARK(BM_Composite);

void BM_MockPipeline(benchmark::State& state) {
  Pipeline pipeline(std::make_shared<MockBackend>(), 4, std::size_t{8});
  const ImageRGB content = gradient(128, 128);
  const CompositePolicy policy{};
  for (auto _ : state) benchmark::DoNotOptimize(pipeline.run(content, kPrompt, policy));
}
BENCHMARK(BM_MockPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
