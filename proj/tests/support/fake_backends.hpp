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

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "mosaic/backend.hpp"
#include "mosaic/error.hpp"

namespace mosaic::testing {

/// Unit basis vector e_index.
inline Embedding basis(std::size_t index, EmbeddingSource source) {
  std::vector<double> v(kEmbeddingDim, 0.0);
  v[index % kEmbeddingDim] = 1.0;
  return Embedding::from_values(std::move(v), source);
}

/// Mock backend with per-method call counters and hooks: optional
/// overrides, an artificial encode delay, injected encode failures and
/// objects that produce an empty mask.
class ScriptedBackend final : public ModelBackend {
 public:
  std::function<Embedding(std::string_view)> text_hook;
  std::function<Embedding(const ImageRGB&)> embed_hook;
  std::chrono::milliseconds encode_delay{0};
  std::atomic<int> fail_encodes{0};
  std::set<std::string> empty_objects;

  mutable std::atomic<int> text_calls{0};
  mutable std::atomic<int> encode_calls{0};
  mutable std::atomic<int> embed_calls{0};
  mutable std::atomic<int> mask_calls{0};
  mutable std::atomic<int> stylize_calls{0};
  mutable std::atomic<int> concurrent_encodes{0};
  mutable std::atomic<int> max_concurrent_encodes{0};

  std::string name() const override { return "scripted"; }

 protected:
  Embedding do_encode_text(std::string_view text) const override {
    ++text_calls;
    return text_hook ? text_hook(text) : mock_.encode_text(text);
  }

  ImageEncoding do_encode_image(const ImageRGB& img) const override {
    ++encode_calls;
    const int now = ++concurrent_encodes;
    int seen = max_concurrent_encodes.load();
    while (now > seen && !max_concurrent_encodes.compare_exchange_weak(seen, now)) {
    }
    if (encode_delay.count() > 0) std::this_thread::sleep_for(encode_delay);
    --concurrent_encodes;
    auto& fails = const_cast<std::atomic<int>&>(fail_encodes);
    if (fails.load() > 0) {
      --fails;
      throw Error(ErrorKind::kBackendUnavailable, "injected failure");
    }
    return mock_.encode_image(img);
  }

  Embedding do_embed_image(const ImageRGB& img) const override {
    ++embed_calls;
    return embed_hook ? embed_hook(img) : mock_.embed_image(img);
  }

  Mask do_generate_mask(const ImageEncoding& enc, std::string_view object_text,
                        const Embedding& emb) const override {
    ++mask_calls;
    if (empty_objects.contains(std::string(object_text))) {
      return Mask(enc.width, enc.height);
    }
    return mock_.generate_mask(enc, object_text, emb);
  }

  ImageRGB do_stylize(const ImageRGB& img, std::string_view style,
                      const Embedding& emb) const override {
    ++stylize_calls;
    return mock_.stylize(img, style, emb);
  }

 private:
  MockBackend mock_;
};

}  // namespace mosaic::testing
