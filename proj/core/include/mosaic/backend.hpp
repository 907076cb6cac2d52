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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/image.hpp"

namespace mosaic {

inline constexpr std::size_t kEmbeddingDim = 512;

enum class EmbeddingSource { kText, kImageCrop };

/// Unit-norm 512-d vector. Construction validates; nothing renormalizes a
/// vector that arrives off-norm.
class Embedding {
 public:
  /// Throws BadResponse unless values has kEmbeddingDim entries and an L2
  /// norm within 1e-6 of 1.
  static Embedding from_values(std::vector<double> values,
                               EmbeddingSource source);
  /// Scales raw values to unit length first (mock backends only).
  static Embedding normalized(std::vector<double> raw, EmbeddingSource source);

  std::span<const double> values() const noexcept { return values_; }
  EmbeddingSource source() const noexcept { return source_; }
  double norm() const noexcept;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  Embedding(std::vector<double> values, EmbeddingSource source)
      : values_(std::move(values)), source_(source) {}

  std::vector<double> values_;
  EmbeddingSource source_;
};

/// Handle to a backend-side image encoding (a promptable segmenter's
/// image embedding), valid only for the backend that issued it.
struct ImageEncoding {
  std::string encoding_id;
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  friend bool operator==(const ImageEncoding&, const ImageEncoding&) = default;
};

/// Text encoder, image encoder, crop embedder, mask generator and stylizer
/// behind one interface. The public methods check preconditions and
/// response contracts for every implementation and delegate to the
/// protected virtuals. Instances are shared across worker threads, so
/// implementations must be safe for concurrent calls.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  virtual std::string name() const = 0;
  /// Largest accepted image in pixels; nullopt for no limit.
  virtual std::optional<std::size_t> max_pixels() const { return std::nullopt; }

  Embedding encode_text(std::string_view text) const;
  ImageEncoding encode_image(const ImageRGB& img) const;
  Embedding embed_image(const ImageRGB& img) const;
  Mask generate_mask(const ImageEncoding& enc, std::string_view object_text,
                     const Embedding& text_embedding) const;
  ImageRGB stylize(const ImageRGB& img, std::string_view style_phrase,
                   const Embedding& style_embedding) const;

 protected:
  virtual Embedding do_encode_text(std::string_view text) const = 0;
  virtual ImageEncoding do_encode_image(const ImageRGB& img) const = 0;
  virtual Embedding do_embed_image(const ImageRGB& img) const = 0;
  virtual Mask do_generate_mask(const ImageEncoding& enc,
                                std::string_view object_text,
                                const Embedding& text_embedding) const = 0;
  virtual ImageRGB do_stylize(const ImageRGB& img,
                              std::string_view style_phrase,
                              const Embedding& style_embedding) const = 0;

 private:
  void check_input(const ImageRGB& img) const;
};

double dot(const Embedding& a, const Embedding& b);

// ---------------------------------------------------------------------------
// Deterministic mock. Every formula below is normative and reproduced
// independently by tests/oracles/mock_oracle.py.

/// splitmix64 seeded with `seed`, 512 draws mapped by
/// ((r >> 11) / 2^53) * 2 - 1, then L2-normalized.
std::vector<double> mock_unit_vector(std::uint64_t seed);

/// ((FNV(style) >> 8c) mod 128) - 64 for c = 0, 1, 2.
std::array<int, 3> mock_style_deltas(std::string_view style_phrase);

/// Every byte of channel c becomes clamp(in + deltas[c], 0, 255).
ImageRGB apply_channel_deltas(const ImageRGB& img,
                              const std::array<int, 3>& deltas);

struct MockOptions {
  std::optional<std::size_t> max_pixels;
};

class MockBackend final : public ModelBackend {
 public:
  explicit MockBackend(MockOptions options = {}) : options_(options) {}

  std::string name() const override { return "mock"; }
  std::optional<std::size_t> max_pixels() const override {
    return options_.max_pixels;
  }

 protected:
  /// seed = FNV-1a-64(text)
  Embedding do_encode_text(std::string_view text) const override;
  /// encoding_id = hex(pixel_key(img))
  ImageEncoding do_encode_image(const ImageRGB& img) const override;
  /// seed = pixel_key(img)
  Embedding do_embed_image(const ImageRGB& img) const override;
  /// Filled rectangle from splitmix64(FNV(object) ^ FNV(encoding_id)):
  /// x0 = r1 % W, y0 = r2 % H, w = 1 + r3 % (W - x0), h = 1 + r4 % (H - y0).
  Mask do_generate_mask(const ImageEncoding& enc, std::string_view object_text,
                        const Embedding& text_embedding) const override;
  ImageRGB do_stylize(const ImageRGB& img, std::string_view style_phrase,
                      const Embedding& style_embedding) const override;

 private:
  MockOptions options_;
};

}  // namespace mosaic
