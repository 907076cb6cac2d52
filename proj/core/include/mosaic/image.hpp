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
#include <vector>

namespace mosaic {

/// Row-major interleaved RGB, 8 bits per channel.
struct ImageRGB {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> data;

  static ImageRGB filled(std::uint32_t width, std::uint32_t height,
                         std::uint8_t r, std::uint8_t g, std::uint8_t b);

  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width) * height;
  }
  std::size_t offset(std::uint32_t x, std::uint32_t y) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* pixel(std::uint32_t x, std::uint32_t y) const noexcept {
    return data.data() + offset(x, y);
  }
  std::uint8_t* pixel(std::uint32_t x, std::uint32_t y) noexcept {
    return data.data() + offset(x, y);
  }

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;
};

/// Throws InvalidImage for zero area or a data size != width*height*3.
void validate(const ImageRGB& img);

/// FNV-1a-64 over (width u32le, height u32le, raw RGB bytes). Used both as
/// the encoding cache key and the mock encoder's encoding id.
std::uint64_t pixel_key(const ImageRGB& img);

/// Square crop; the region must lie inside the image.
ImageRGB crop(const ImageRGB& img, std::uint32_t x, std::uint32_t y,
              std::uint32_t side);

/// Binary occupancy, row-major, one byte (0 or 1) per pixel.
struct Mask {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(std::uint32_t w, std::uint32_t h)
      : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  static Mask rectangle(std::uint32_t w, std::uint32_t h, std::uint32_t x0,
                        std::uint32_t y0, std::uint32_t rect_w,
                        std::uint32_t rect_h);

  std::size_t pixel_count() const noexcept { return bits.size(); }
  bool at(std::uint32_t x, std::uint32_t y) const noexcept {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(std::uint32_t x, std::uint32_t y, bool on = true) noexcept {
    bits[static_cast<std::size_t>(y) * width + x] = on ? 1 : 0;
  }
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool same_size(const ImageRGB& img) const noexcept {
    return width == img.width && height == img.height;
  }

  friend bool operator==(const Mask&, const Mask&) = default;
};

}  // namespace mosaic
