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

#include "mosaic/image_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

#include "mosaic/error.hpp"

namespace mosaic {

namespace {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::vector<std::uint8_t> write_memory(std::uint32_t width,
                                       std::uint32_t height,
                                       png_uint_32 format,
                                       const std::uint8_t* pixels) {
  PngImage png;
  png.image.width = width;
  png.image.height = height;
  png.image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, pixels, 0,
                                 nullptr)) {
    throw Error(ErrorKind::kInvalidImage,
                std::string("png encode: ") + png.image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, pixels, 0,
                                 nullptr)) {
    throw Error(ErrorKind::kInvalidImage,
                std::string("png encode: ") + png.image.message);
  }
  out.resize(size);
  return out;
}

template <typename Fill>
void read_memory(const std::vector<std::uint8_t>& bytes, png_uint_32 format,
                 Fill&& fill) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(),
                                        bytes.size())) {
    throw Error(ErrorKind::kInvalidImage,
                std::string("png decode: ") + png.image.message);
  }
  png.image.format = format;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr)) {
    throw Error(ErrorKind::kInvalidImage,
                std::string("png decode: ") + png.image.message);
  }
  fill(png.image.width, png.image.height, std::move(buffer));
}

}  // namespace

std::vector<std::uint8_t> encode_png(const ImageRGB& img) {
  validate(img);
  return write_memory(img.width, img.height, PNG_FORMAT_RGB, img.data.data());
}

ImageRGB decode_png(const std::vector<std::uint8_t>& bytes) {
  ImageRGB img;
  read_memory(bytes, PNG_FORMAT_RGB,
              [&](std::uint32_t w, std::uint32_t h,
                  std::vector<std::uint8_t> buf) {
                img = ImageRGB{w, h, std::move(buf)};
              });
  return img;
}

std::vector<std::uint8_t> encode_mask_png(const Mask& mask) {
  if (mask.width == 0 || mask.height == 0) {
    throw Error(ErrorKind::kInvalidImage, "zero-area mask");
  }
  std::vector<std::uint8_t> gray(mask.bits.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = mask.bits[i] ? 255 : 0;
  }
  return write_memory(mask.width, mask.height, PNG_FORMAT_GRAY, gray.data());
}

Mask decode_mask_png(const std::vector<std::uint8_t>& bytes) {
  Mask mask;
  read_memory(bytes, PNG_FORMAT_GRAY,
              [&](std::uint32_t w, std::uint32_t h,
                  std::vector<std::uint8_t> buf) {
                mask = Mask(w, h);
                for (std::size_t i = 0; i < buf.size(); ++i) {
                  mask.bits[i] = buf[i] != 0 ? 1 : 0;
                }
              });
  return mask;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path,
                 const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIoError, "short write " + path.string());
}

ImageRGB read_png(const std::filesystem::path& path) {
  try {
    return decode_png(read_bytes(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidImage) {
      throw Error(ErrorKind::kIoError, path.string() + ": " + e.detail());
    }
    throw;
  }
}

void write_png(const std::filesystem::path& path, const ImageRGB& img) {
  write_bytes(path, encode_png(img));
}

Mask read_mask_png(const std::filesystem::path& path) {
  return decode_mask_png(read_bytes(path));
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
  write_bytes(path, encode_mask_png(mask));
}

}  // namespace mosaic
