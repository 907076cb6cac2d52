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

#include "mosaic/image.hpp"

#include <algorithm>
#include <string>

#include "mosaic/error.hpp"
#include "mosaic/hashing.hpp"

namespace mosaic {

ImageRGB ImageRGB::filled(std::uint32_t width, std::uint32_t height,
                          std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  ImageRGB img{width, height, {}};
  img.data.resize(img.pixel_count() * 3);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    img.data[3 * i] = r;
    img.data[3 * i + 1] = g;
    img.data[3 * i + 2] = b;
  }
  return img;
}

void validate(const ImageRGB& img) {
  if (img.width == 0 || img.height == 0) {
    throw Error(ErrorKind::kInvalidImage,
                "zero-area image " + std::to_string(img.width) + "x" +
                    std::to_string(img.height));
  }
  if (img.data.size() != img.pixel_count() * 3) {
    throw Error(ErrorKind::kInvalidImage,
                "pixel buffer holds " + std::to_string(img.data.size()) +
                    " bytes, expected " + std::to_string(img.pixel_count() * 3));
  }
}

std::uint64_t pixel_key(const ImageRGB& img) {
  return Fnv1a64{}
      .update_u32le(img.width)
      .update_u32le(img.height)
      .update(img.data)
      .digest();
}

ImageRGB crop(const ImageRGB& img, std::uint32_t x, std::uint32_t y,
              std::uint32_t side) {
  if (side == 0 || x + side > img.width || y + side > img.height) {
    throw Error(ErrorKind::kInvalidArgument, "crop outside image");
  }
  ImageRGB out{side, side, std::vector<std::uint8_t>(
                               static_cast<std::size_t>(side) * side * 3)};
  for (std::uint32_t row = 0; row < side; ++row) {
    const std::uint8_t* src = img.pixel(x, y + row);
    std::copy(src, src + static_cast<std::size_t>(side) * 3,
              out.pixel(0, row));
  }
  return out;
}

Mask Mask::rectangle(std::uint32_t w, std::uint32_t h, std::uint32_t x0,
                     std::uint32_t y0, std::uint32_t rect_w,
                     std::uint32_t rect_h) {
  Mask m(w, h);
  for (std::uint32_t y = y0; y < std::min(h, y0 + rect_h); ++y) {
    for (std::uint32_t x = x0; x < std::min(w, x0 + rect_w); ++x) m.set(x, y);
  }
  return m;
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) {
        return b != 0;
      }));
}

}  // namespace mosaic
