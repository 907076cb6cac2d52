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

#include "mosaic/wire.hpp"

#include <openssl/evp.h>

#include "mosaic/error.hpp"
#include "mosaic/image_io.hpp"

namespace mosaic::wire {

using nlohmann::json;

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw Error(ErrorKind::kBadResponse, "base64 length not a multiple of 4");
  }
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n =
      EVP_DecodeBlock(out.data(),
                      reinterpret_cast<const unsigned char*>(text.data()),
                      static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorKind::kBadResponse, "malformed base64");
  // EVP_DecodeBlock keeps the bytes produced by '=' padding.
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

std::vector<std::uint64_t> rle_encode(const Mask& mask) {
  std::vector<std::uint64_t> runs;
  std::uint8_t current = 0;
  std::uint64_t length = 0;
  for (std::uint8_t b : mask.bits) {
    const std::uint8_t v = b ? 1 : 0;
    if (v != current) {
      runs.push_back(length);
      current = v;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return runs;
}

Mask rle_decode(std::uint32_t width, std::uint32_t height,
                const std::vector<std::uint64_t>& runs) {
  Mask mask(width, height);
  const std::uint64_t total = mask.bits.size();
  std::uint64_t pos = 0;
  std::uint8_t value = 0;
  for (std::uint64_t run : runs) {
    if (run > total - pos) {
      throw Error(ErrorKind::kBadResponse, "mask_rle overruns the frame");
    }
    if (value) {
      std::fill_n(mask.bits.begin() + static_cast<std::ptrdiff_t>(pos), run,
                  std::uint8_t{1});
    }
    pos += run;
    value ^= 1;
  }
  if (pos != total) {
    throw Error(ErrorKind::kBadResponse,
                "mask_rle covers " + std::to_string(pos) + " of " +
                    std::to_string(total) + " pixels");
  }
  return mask;
}

std::string image_to_b64(const ImageRGB& img) {
  return base64_encode(encode_png(img));
}

ImageRGB image_from_b64(std::string_view b64) {
  return decode_png(base64_decode(b64));
}

namespace {

json embedding_array(const Embedding& e) {
  json arr = json::array();
  for (double v : e.values()) arr.push_back(v);
  return arr;
}

template <typename T>
T field(const json& body, const char* key, ErrorKind kind) {
  try {
    return body.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(kind, std::string("field '") + key + "': " + e.what());
  }
}

std::vector<double> float_array(const json& body, const char* key,
                                ErrorKind kind) {
  if (!body.contains(key) || !body.at(key).is_array()) {
    throw Error(kind, std::string("field '") + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(body.at(key).size());
  for (const auto& v : body.at(key)) {
    if (!v.is_number()) {
      throw Error(kind, std::string("field '") + key + "' holds a non-number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Embedding embedding_field(const json& body, const char* key, ErrorKind kind,
                          EmbeddingSource source) {
  try {
    return Embedding::from_values(float_array(body, key, kind), source);
  } catch (const Error& e) {
    if (e.kind() == kind) throw;
    throw Error(kind, std::string(key) + ": " + e.detail());
  }
}

ImageRGB image_field(const json& body, const char* key, ErrorKind kind) {
  const auto b64 = field<std::string>(body, key, kind);
  try {
    return image_from_b64(b64);
  } catch (const Error& e) {
    throw Error(kind, std::string(key) + ": " + e.detail());
  }
}

void require_object(const json& body, ErrorKind kind) {
  if (!body.is_object()) throw Error(kind, "body must be a JSON object");
}

}  // namespace

json text_encode_request(std::string_view text) {
  return {{"text", std::string(text)}};
}

json image_encode_request(const ImageRGB& img) {
  return {{"image_png_b64", image_to_b64(img)}};
}

json image_embed_request(const ImageRGB& img) {
  return {{"image_png_b64", image_to_b64(img)}};
}

json mask_request(const ImageEncoding& enc, std::string_view object_text,
                  const Embedding& text_embedding) {
  return {{"encoding_id", enc.encoding_id},
          {"object_text", std::string(object_text)},
          {"text_embedding", embedding_array(text_embedding)}};
}

json stylize_request(const ImageRGB& img, std::string_view style_text,
                     const Embedding& style_embedding) {
  return {{"image_png_b64", image_to_b64(img)},
          {"style_text", std::string(style_text)},
          {"style_embedding", embedding_array(style_embedding)}};
}

json embedding_response(const Embedding& e) {
  return {{"embedding", embedding_array(e)}};
}

json image_encode_response(const ImageEncoding& enc) {
  return {{"encoding_id", enc.encoding_id},
          {"width", enc.width},
          {"height", enc.height}};
}

json mask_response(const Mask& mask) {
  return {{"width", mask.width},
          {"height", mask.height},
          {"mask_rle", rle_encode(mask)}};
}

json stylize_response(const ImageRGB& img) {
  return {{"image_png_b64", image_to_b64(img)}};
}

json health_response() {
  return {{"status", "ok"}, {"embedding_dim", kEmbeddingDim}};
}

Embedding parse_embedding_response(const json& body, EmbeddingSource source) {
  require_object(body, ErrorKind::kBadResponse);
  return embedding_field(body, "embedding", ErrorKind::kBadResponse, source);
}

ImageEncoding parse_image_encode_response(const json& body) {
  require_object(body, ErrorKind::kBadResponse);
  ImageEncoding enc{
      field<std::string>(body, "encoding_id", ErrorKind::kBadResponse),
      field<std::uint32_t>(body, "width", ErrorKind::kBadResponse),
      field<std::uint32_t>(body, "height", ErrorKind::kBadResponse)};
  if (enc.encoding_id.empty() || enc.width == 0 || enc.height == 0) {
    throw Error(ErrorKind::kBadResponse, "empty encoding handle");
  }
  return enc;
}

Mask parse_mask_response(const json& body) {
  require_object(body, ErrorKind::kBadResponse);
  const auto w = field<std::uint32_t>(body, "width", ErrorKind::kBadResponse);
  const auto h = field<std::uint32_t>(body, "height", ErrorKind::kBadResponse);
  const auto runs = field<std::vector<std::uint64_t>>(body, "mask_rle",
                                                      ErrorKind::kBadResponse);
  return rle_decode(w, h, runs);
}

ImageRGB parse_stylize_response(const json& body) {
  require_object(body, ErrorKind::kBadResponse);
  return image_field(body, "image_png_b64", ErrorKind::kBadResponse);
}

std::size_t parse_health_response(const json& body) {
  require_object(body, ErrorKind::kBadResponse);
  const auto status =
      field<std::string>(body, "status", ErrorKind::kBadResponse);
  if (status != "ok") {
    throw Error(ErrorKind::kBackendUnavailable, "sidecar status " + status);
  }
  return field<std::size_t>(body, "embedding_dim", ErrorKind::kBadResponse);
}

std::string parse_text_encode_request(const json& body) {
  require_object(body, ErrorKind::kBadRequest);
  auto text = field<std::string>(body, "text", ErrorKind::kBadRequest);
  if (text.empty()) throw Error(ErrorKind::kBadRequest, "empty text");
  return text;
}

ImageRGB parse_image_request(const json& body) {
  require_object(body, ErrorKind::kBadRequest);
  return image_field(body, "image_png_b64", ErrorKind::kBadRequest);
}

MaskRequest parse_mask_request(const json& body) {
  require_object(body, ErrorKind::kBadRequest);
  return {field<std::string>(body, "encoding_id", ErrorKind::kBadRequest),
          field<std::string>(body, "object_text", ErrorKind::kBadRequest),
          embedding_field(body, "text_embedding", ErrorKind::kBadRequest,
                          EmbeddingSource::kText)};
}

StylizeRequest parse_stylize_request(const json& body) {
  require_object(body, ErrorKind::kBadRequest);
  return {image_field(body, "image_png_b64", ErrorKind::kBadRequest),
          field<std::string>(body, "style_text", ErrorKind::kBadRequest),
          embedding_field(body, "style_embedding", ErrorKind::kBadRequest,
                          EmbeddingSource::kText)};
}

int http_status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownEncoding: return 404;
    case ErrorKind::kEmptyMask: return 422;
    case ErrorKind::kBackendUnavailable: return 503;
    case ErrorKind::kImageTooLarge: return 413;
    default: return 400;
  }
}

json error_body(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.detail()}};
}

}  // namespace mosaic::wire
