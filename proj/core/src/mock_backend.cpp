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

#include <algorithm>
#include <cmath>

#include "mosaic/backend.hpp"
#include "mosaic/error.hpp"
#include "mosaic/hashing.hpp"

namespace mosaic {

// ---------------------------------------------------------------------------
// Embedding

namespace {
double l2(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}
}  // namespace

Embedding Embedding::from_values(std::vector<double> values,
                                 EmbeddingSource source) {
  if (values.size() != kEmbeddingDim) {
    throw Error(ErrorKind::kBadResponse,
                "embedding dimension " + std::to_string(values.size()) +
                    ", expected " + std::to_string(kEmbeddingDim));
  }
  const double n = l2(values);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6) {
    throw Error(ErrorKind::kBadResponse,
                "embedding norm " + std::to_string(n) + " is not unit");
  }
  return Embedding(std::move(values), source);
}

Embedding Embedding::normalized(std::vector<double> raw,
                                EmbeddingSource source) {
  const double n = l2(raw);
  if (n == 0.0 || !std::isfinite(n)) {
    throw Error(ErrorKind::kBadResponse, "cannot normalize a zero vector");
  }
  for (double& x : raw) x /= n;
  return from_values(std::move(raw), source);
}

double Embedding::norm() const noexcept {
  double sum = 0.0;
  for (double x : values_) sum += x * x;
  return std::sqrt(sum);
}

double dot(const Embedding& a, const Embedding& b) {
  double sum = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) sum += av[i] * bv[i];
  return sum;
}

// ---------------------------------------------------------------------------
// Contract checks shared by all backends

void ModelBackend::check_input(const ImageRGB& img) const {
  validate(img);
  if (const auto limit = max_pixels(); limit && img.pixel_count() > *limit) {
    throw Error(ErrorKind::kImageTooLarge,
                std::to_string(img.width) + "x" + std::to_string(img.height) +
                    " exceeds the " + name() + " backend limit of " +
                    std::to_string(*limit) + " pixels");
  }
}

Embedding ModelBackend::encode_text(std::string_view text) const {
  if (text.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "encode_text on empty text");
  }
  return do_encode_text(text);
}

ImageEncoding ModelBackend::encode_image(const ImageRGB& img) const {
  check_input(img);
  ImageEncoding enc = do_encode_image(img);
  if (enc.encoding_id.empty()) {
    throw Error(ErrorKind::kBadResponse, "empty encoding_id");
  }
  if (enc.width != img.width || enc.height != img.height) {
    throw Error(ErrorKind::kDimensionMismatch,
                "encoding reports " + std::to_string(enc.width) + "x" +
                    std::to_string(enc.height));
  }
  return enc;
}

Embedding ModelBackend::embed_image(const ImageRGB& img) const {
  check_input(img);
  return do_embed_image(img);
}

Mask ModelBackend::generate_mask(const ImageEncoding& enc,
                                 std::string_view object_text,
                                 const Embedding& text_embedding) const {
  if (enc.encoding_id.empty() || enc.width == 0 || enc.height == 0) {
    throw Error(ErrorKind::kUnknownEncoding, "invalid image encoding handle");
  }
  if (object_text.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "generate_mask on empty object");
  }
  Mask mask = do_generate_mask(enc, object_text, text_embedding);
  if (mask.width != enc.width || mask.height != enc.height ||
      mask.bits.size() != mask.pixel_count() ||
      mask.bits.size() != static_cast<std::size_t>(enc.width) * enc.height) {
    throw Error(ErrorKind::kDimensionMismatch,
                "mask " + std::to_string(mask.width) + "x" +
                    std::to_string(mask.height) + " for a " +
                    std::to_string(enc.width) + "x" +
                    std::to_string(enc.height) + " image");
  }
  if (mask.empty()) {
    throw Error(ErrorKind::kEmptyMask,
                "no region found for '" + std::string(object_text) + "'");
  }
  return mask;
}

ImageRGB ModelBackend::stylize(const ImageRGB& img,
                               std::string_view style_phrase,
                               const Embedding& style_embedding) const {
  check_input(img);
  if (style_phrase.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "stylize with empty style");
  }
  ImageRGB out = do_stylize(img, style_phrase, style_embedding);
  if (out.width != img.width || out.height != img.height ||
      out.data.size() != img.data.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "stylizer returned " + std::to_string(out.width) + "x" +
                    std::to_string(out.height) + " for a " +
                    std::to_string(img.width) + "x" +
                    std::to_string(img.height) + " input");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mock

std::vector<double> mock_unit_vector(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(kEmbeddingDim);
  for (double& x : v) x = rng.unit() * 2.0 - 1.0;
  double sum = 0.0;
  for (double x : v) sum += x * x;
  const double n = std::sqrt(sum);
  for (double& x : v) x /= n;
  return v;
}

std::array<int, 3> mock_style_deltas(std::string_view style_phrase) {
  const std::uint64_t h = fnv1a64(style_phrase);
  std::array<int, 3> d{};
  for (int c = 0; c < 3; ++c) {
    d[static_cast<std::size_t>(c)] =
        static_cast<int>((h >> (8 * c)) % 128) - 64;
  }
  return d;
}

ImageRGB apply_channel_deltas(const ImageRGB& img,
                              const std::array<int, 3>& deltas) {
  ImageRGB out = img;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const int v = out.data[i] + deltas[i % 3];
    out.data[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  return out;
}

Embedding MockBackend::do_encode_text(std::string_view text) const {
  return Embedding::from_values(mock_unit_vector(fnv1a64(text)),
                                EmbeddingSource::kText);
}

ImageEncoding MockBackend::do_encode_image(const ImageRGB& img) const {
  return {to_hex64(pixel_key(img)), img.width, img.height};
}

Embedding MockBackend::do_embed_image(const ImageRGB& img) const {
  return Embedding::from_values(mock_unit_vector(pixel_key(img)),
                                EmbeddingSource::kImageCrop);
}

Mask MockBackend::do_generate_mask(const ImageEncoding& enc,
                                   std::string_view object_text,
                                   const Embedding&) const {
  const bool hex_id =
      enc.encoding_id.size() == 16 &&
      std::all_of(enc.encoding_id.begin(), enc.encoding_id.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
      });
  if (!hex_id) {
    throw Error(ErrorKind::kUnknownEncoding,
                "'" + enc.encoding_id + "' was not issued by the mock");
  }
  SplitMix64 rng(fnv1a64(object_text) ^ fnv1a64(enc.encoding_id));
  const std::uint64_t w = enc.width;
  const std::uint64_t h = enc.height;
  const std::uint64_t x0 = rng.next() % w;
  const std::uint64_t y0 = rng.next() % h;
  const std::uint64_t rw = 1 + rng.next() % (w - x0);
  const std::uint64_t rh = 1 + rng.next() % (h - y0);
  return Mask::rectangle(enc.width, enc.height, static_cast<std::uint32_t>(x0),
                         static_cast<std::uint32_t>(y0),
                         static_cast<std::uint32_t>(rw),
                         static_cast<std::uint32_t>(rh));
}

ImageRGB MockBackend::do_stylize(const ImageRGB& img,
                                 std::string_view style_phrase,
                                 const Embedding&) const {
  return apply_channel_deltas(img, mock_style_deltas(style_phrase));
}

}  // namespace mosaic
