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

// Acceptance suite. Prints one PASS/FAIL line per primary criterion and
// exits nonzero if any criterion fails. Uses only the mock backend and the
// in-process loopback server.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <latch>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "mosaic/compositor.hpp"
#include "mosaic/corpus.hpp"
#include "mosaic/enc_cache.hpp"
#include "mosaic/evaluator.hpp"
#include "mosaic/pipeline.hpp"
#include "mosaic/tokens.hpp"
#include "support/fake_backends.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/protocol_golden.hpp"

namespace {

using namespace mosaic;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome serialization_round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  testing::Rng rng(1);
  std::size_t ok = 0;
  for (int i = 0; i < 10000; ++i) {
    const SegmentedPrompt sp = testing::random_segmented(rng);
    const std::string s = serialize_pairs(sp);
    ok += deserialize_pairs(s) == sp && serialize_pairs(deserialize_pairs(s)) == s;
  }
  const double secs = seconds_since(t0);
  o.require(ok == 10000, std::to_string(10000 - ok) + " prompts failed to round-trip");
  o.require(secs < 5.0, "runtime " + std::to_string(secs) + " s >= 5 s");
  o.detail = o.pass ? "10000/10000 byte-exact in " + std::to_string(secs) + " s" : o.detail;
  return o;
}

Outcome corpus_soundness() {
  Outcome o;
  const std::filesystem::path data = MOSAIC_DATA_DIR;
  const auto t0 = Clock::now();
  const Lexicon classes = load_lexicon(data / "classes.txt");
  const Lexicon styles = load_lexicon(data / "styles.txt");
  o.require(classes.size() == 400 && styles.size() == 150, "lexicon sizes differ from 400 x 150");
  const auto records = generate_corpus(classes, styles, load_templates(data / "templates.txt"),
                                       10000, 7);
  std::size_t ok = 0;
  for (const auto& r : records) ok += parse_prompt(Prompt{r.prompt_text}) == r.gold;
  const double secs = seconds_since(t0);
  o.require(records.size() == 10000 && ok == 10000,
            std::to_string(ok) + "/" + std::to_string(records.size()) + " records parse to gold");
  o.require(secs < 30.0, "runtime " + std::to_string(secs) + " s >= 30 s");
  if (o.pass) o.detail = "10000/10000 parse(prompt) = gold in " + std::to_string(secs) + " s";
  return o;
}

Outcome cross_entropy_oracle() {
  Outcome o;
  testing::Rng rng(2);
  std::uniform_real_distribution<double> u(1e-4, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    TokenDistribution td;
    const std::uint32_t positions = testing::uniform(rng, 1, 16);
    const std::uint32_t vocab = testing::uniform(rng, 2, 64);
    for (std::uint32_t p = 0; p < positions; ++p) {
      std::vector<double> row(vocab);
      for (auto& x : row) x = u(rng);
      const double sum = std::accumulate(row.begin(), row.end(), 0.0);
      for (auto& x : row) x /= sum;
      td.probs.push_back(std::move(row));
      td.gold.push_back(testing::uniform(rng, 0, vocab - 1));
    }
    worst = std::max(worst, std::abs(token_cross_entropy(td).loss -
                                     oracle::cross_entropy_sum(td.probs, td.gold)));
  }
  o.require(worst <= 1e-9, "max deviation " + std::to_string(worst));
  const double one_hot = token_cross_entropy({{{0.0, 1.0, 0.0, 0.0}}, {1}}).loss;
  const double uniform4 = token_cross_entropy({{{0.25, 0.25, 0.25, 0.25}}, {3}}).loss;
  o.require(std::abs(one_hot) <= 1e-12, "one-hot loss " + std::to_string(one_hot));
  o.require(std::abs(uniform4 - std::log(4.0)) <= 1e-12, "uniform-4 loss off");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |err| %.3g over 1000; one-hot 0; uniform-4 ln 4", worst);
    o.detail = buf;
  }
  return o;
}

Outcome compositor_oracle() {
  Outcome o;
  testing::Rng rng(3);
  for (int i = 0; i < 500 && o.pass; ++i) {
    const std::uint32_t w = testing::uniform(rng, 1, 32);
    const std::uint32_t h = testing::uniform(rng, 1, 32);
    const ImageRGB content = testing::random_image(rng, w, h);
    std::vector<StyleAssignment> assignments;
    std::vector<Mask> masks;
    std::vector<ImageRGB> styled;
    const std::uint32_t n = testing::uniform(rng, 0, 5);
    for (std::uint32_t k = 0; k < n; ++k) {
      masks.push_back(testing::random_mask(rng, w, h));
      styled.push_back(testing::random_image(rng, w, h));
      assignments.push_back({masks.back(), styled.back(), k});
    }
    for (auto policy : {OverlapPolicy::kLastWins, OverlapPolicy::kFirstWins}) {
      o.require(composite(content, assignments, {policy, {}, {}}) ==
                    oracle::select_pixels(content, masks, styled, policy),
                "instance " + std::to_string(i) + " differs from per-pixel selector");
      const auto resolved = resolve_overlaps(masks, policy);
      for (std::size_t p = 0; p < content.pixel_count(); ++p) {
        std::uint8_t a = 0, b = 0;
        for (const auto& m : masks) a |= m.bits[p];
        for (const auto& m : resolved) b |= m.bits[p];
        o.require(a == b, "instance " + std::to_string(i) + " union changed");
      }
    }
  }
  if (o.pass) o.detail = "500 instances x 2 policies byte-identical; union preserved";
  return o;
}

Outcome bbox_oracle() {
  Outcome o;
  testing::Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Mask m = testing::random_nonempty_mask(rng, testing::uniform(rng, 1, 64),
                                                 testing::uniform(rng, 1, 64));
    o.require(mask_bbox(m) == *oracle::bbox_scan(m), "mask " + std::to_string(i) + " differs");
  }
  if (o.pass) o.detail = "1000/1000 exact";
  return o;
}

Outcome cache_contract() {
  Outcome o;
  {
    testing::ScriptedBackend b;
    EncodingCache cache(8);
    for (int round = 0; round < 5; ++round) {
      for (std::uint8_t n = 0; n < 6; ++n) cache.get_or_encode(ImageRGB::filled(4, 4, n, n, n), b);
    }
    o.require(b.encode_calls == 6, "encoder called " + std::to_string(b.encode_calls) +
                                       " times for 6 distinct images");
  }
  {
    testing::ScriptedBackend b;
    EncodingCache cache(1);
    for (std::uint8_t n : {1, 2, 1}) cache.get_or_encode(ImageRGB::filled(4, 4, n, n, n), b);
    const auto s = cache.stats();
    o.require(s.misses == 3 && s.evictions == 2 && s.hits == 0,
              "A,B,A @1 gave misses=" + std::to_string(s.misses) +
                  " evictions=" + std::to_string(s.evictions));
  }
  {
    testing::ScriptedBackend b;
    b.encode_delay = std::chrono::milliseconds(50);
    EncodingCache cache(8);
    std::latch start(16);
    {
      std::vector<std::jthread> threads;
      for (int t = 0; t < 16; ++t) {
        threads.emplace_back([&] {
          start.arrive_and_wait();
          cache.get_or_encode(ImageRGB::filled(8, 8, 9, 9, 9), b);
        });
      }
    }
    o.require(b.encode_calls == 1 && b.max_concurrent_encodes == 1,
              std::to_string(b.encode_calls) + " encodes under 16 concurrent lookups");
  }
  if (o.pass) o.detail = "single encode; A,B,A @1 -> 3 misses, 2 evictions; 16 threads -> 1 encode";
  return o;
}

Outcome evaluator_algebra() {
  Outcome o;
  testing::Rng rng(5);
  const ImageRGB img = testing::random_image(rng, 48, 40);
  const auto sp = make_segmented({{"a", "ink"}, {"b", "oil"}});
  const std::vector<Mask> masks{testing::random_nonempty_mask(rng, 48, 40),
                                testing::random_nonempty_mask(rng, 48, 40)};
  MockBackend mock;
  const std::string first = to_json(patchwise_clip_score(img, sp, masks, mock, mock, 17)).dump();
  for (int run = 0; run < 10; ++run) {
    ScoreOptions opts;
    opts.workers = 1 + run % 3;
    o.require(to_json(patchwise_clip_score(img, sp, masks, mock, mock, 17, opts)).dump() == first,
              "run " + std::to_string(run) + " not byte-identical");
  }

  // Left half red=1, right half red=2; crops embed to e_{red}.
  ImageRGB scene = ImageRGB::filled(64, 32, 1, 0, 0);
  for (std::uint32_t y = 0; y < 32; ++y) {
    for (std::uint32_t x = 32; x < 64; ++x) scene.pixel(x, y)[0] = 2;
  }
  const std::vector<Mask> halves{Mask::rectangle(64, 32, 0, 0, 32, 32),
                                 Mask::rectangle(64, 32, 32, 0, 32, 32)};
  auto aggregate = [&](std::size_t left, std::size_t right) {
    testing::ScriptedBackend b;
    b.text_hook = [=](std::string_view s) {
      return testing::basis(s == "l" ? left : right, EmbeddingSource::kText);
    };
    b.embed_hook = [](const ImageRGB& c) {
      return testing::basis(c.data[0], EmbeddingSource::kImageCrop);
    };
    return patchwise_clip_score(scene, make_segmented({{"left", "l"}, {"right", "r"}}), halves,
                                b, b, 3)
        .aggregate.value_or(-1.0);
  };
  const double identity = aggregate(1, 2);
  const double orthogonal = aggregate(5, 6);
  const double mixed = aggregate(1, 6);
  o.require(identity == 1.0, "identity aggregate " + std::to_string(identity));
  o.require(orthogonal == 0.0, "orthogonal aggregate " + std::to_string(orthogonal));
  o.require(std::abs(mixed - 0.5) <= 1e-12, "mixed aggregate " + std::to_string(mixed));

  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t x0 = testing::uniform(rng, 0, 400);
    const std::uint32_t y0 = testing::uniform(rng, 0, 400);
    const BBox b{x0, y0, x0 + testing::uniform(rng, 0, 250), y0 + testing::uniform(rng, 0, 250)};
    for (const CropRect& c : sample_crops(b, kCropsPerObject, rng(), i % 7)) {
      o.require(c.x >= b.x0 && c.y >= b.y0 && c.x + c.side - 1 <= b.x1 &&
                    c.y + c.side - 1 <= b.y1,
                "crop escapes bbox " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "10 runs identical; identity 1, orthogonal 0, mixed 0.5; 8000 crops contained";
  return o;
}

Outcome end_to_end_mock() {
  Outcome o;
  testing::Rng rng(6);
  ImageRGB content = testing::random_image(rng, 32, 32);
  for (auto& b : content.data) b = static_cast<std::uint8_t>(64 + b % 128);
  const std::string prompt = "tree in watercolor style and sky in the style of starry night";
  auto backend = std::make_shared<testing::ScriptedBackend>();
  Pipeline pipeline(backend, 4, kDefaultCacheCapacity);
  const PipelineResult r = pipeline.run(content, prompt, {});
  for (std::size_t p = 0; p < content.pixel_count(); ++p) {
    bool covered = false;
    for (const auto& m : r.masks) covered = covered || m.resolved.bits[p];
    const bool differs = !std::equal(r.composite.data.begin() + 3 * p,
                                     r.composite.data.begin() + 3 * p + 3,
                                     content.data.begin() + 3 * p);
    o.require(differs == covered, "pixel " + std::to_string(p) + " outside/inside mask support");
  }
  const std::size_t distinct = r.pairs.distinct_styles().size();
  o.require(static_cast<std::size_t>(backend->stylize_calls.load()) == distinct,
            "stylize calls " + std::to_string(backend->stylize_calls) + " != distinct styles");
  const int encodes = backend->encode_calls;
  const PipelineResult warm = pipeline.run(content, prompt, {});
  o.require(backend->encode_calls == encodes && warm.timings[2].invocations == 0,
            "warm rerun encoded the image again");
  if (o.pass) {
    o.detail = "composite differs exactly on resolved support; " + std::to_string(distinct) +
               " stylize calls; warm image encodes 0";
  }
  return o;
}

Outcome protocol_golden() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& ex : testing::record_exchanges()) {
    if (!ex.request.empty()) {
      o.require(testing::canonical_text(ex.request) ==
                    testing::read_text(testing::golden_path(ex.name, "request")),
                ex.name + " request differs from golden");
      ++compared;
    }
    o.require(testing::canonical_text(ex.response) ==
                  testing::read_text(testing::golden_path(ex.name, "response")),
              ex.name + " response differs from golden");
    ++compared;
  }
  if (o.pass) o.detail = std::to_string(compared) + " canonical bodies byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"serialization-round-trip", serialization_round_trip},
      {"corpus-soundness", corpus_soundness},
      {"cross-entropy-oracle", cross_entropy_oracle},
      {"compositor-oracle", compositor_oracle},
      {"mask-bbox-oracle", bbox_oracle},
      {"cache-contract", cache_contract},
      {"evaluator-determinism-algebra", evaluator_algebra},
      {"end-to-end-mock-run", end_to_end_mock},
      {"protocol-golden", protocol_golden},
  };
  const auto t0 = Clock::now();
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %-30s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  const double total = seconds_since(t0);
  const bool fast = total < 120.0;
  failures += fast ? 0 : 1;
  std::printf("%s  %-30s %.2f s total, mock backend and loopback only\n",
              fast ? "PASS" : "FAIL", "suite-runtime", total);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
