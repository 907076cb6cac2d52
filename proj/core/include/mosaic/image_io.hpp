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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mosaic/image.hpp"

namespace mosaic {

// PNG codecs. Any PNG color type is accepted on read and converted to
// 8-bit RGB (images) or thresholded at nonzero luminance (masks).

std::vector<std::uint8_t> encode_png(const ImageRGB& img);
ImageRGB decode_png(const std::vector<std::uint8_t>& bytes);

ImageRGB read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageRGB& img);

/// Single-channel PNG with 0 / 255 values.
std::vector<std::uint8_t> encode_mask_png(const Mask& mask);
Mask decode_mask_png(const std::vector<std::uint8_t>& bytes);
Mask read_mask_png(const std::filesystem::path& path);
void write_mask_png(const std::filesystem::path& path, const Mask& mask);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path,
                 const std::vector<std::uint8_t>& bytes);

}  // namespace mosaic
