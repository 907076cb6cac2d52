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

// Writes a small gradient PNG used by the CLI tests.

#include <cstdint>
#include <iostream>

#include "mosaic/image_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_sample <out.png>\n";
    return 2;
  }
  mosaic::ImageRGB img = mosaic::ImageRGB::filled(48, 40, 0, 0, 0);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    for (std::uint32_t x = 0; x < img.width; ++x) {
      const std::size_t o = img.offset(x, y);
      img.data[o] = static_cast<std::uint8_t>(x * 5);
      img.data[o + 1] = static_cast<std::uint8_t>(y * 6);
      img.data[o + 2] = static_cast<std::uint8_t>((x + y) * 3);
    }
  }
  mosaic::write_png(argv[1], img);
  return 0;
}
