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
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"
#include "mosaic/error.hpp"
#include "mosaic/image.hpp"

namespace mosaic::wire {

// Endpoint paths of the model sidecar protocol.
inline constexpr const char* kHealthPath = "/v1/health";
inline constexpr const char* kTextEncodePath = "/v1/text/encode";
inline constexpr const char* kImageEncodePath = "/v1/image/encode";
inline constexpr const char* kImageEmbedPath = "/v1/image/embed";
inline constexpr const char* kMaskPath = "/v1/mask";
inline constexpr const char* kStylizePath = "/v1/stylize";

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
/// Throws BadResponse on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Row-major alternating run lengths, the first run counting zeros
/// (uncompressed COCO style). A mask starting with a set bit begins with 0.
std::vector<std::uint64_t> rle_encode(const Mask& mask);
/// Throws BadResponse if the runs do not sum to width*height.
Mask rle_decode(std::uint32_t width, std::uint32_t height,
                const std::vector<std::uint64_t>& runs);

std::string image_to_b64(const ImageRGB& img);
ImageRGB image_from_b64(std::string_view b64);

// Request bodies (client side).
nlohmann::json text_encode_request(std::string_view text);
nlohmann::json image_encode_request(const ImageRGB& img);
nlohmann::json image_embed_request(const ImageRGB& img);
nlohmann::json mask_request(const ImageEncoding& enc,
                            std::string_view object_text,
                            const Embedding& text_embedding);
nlohmann::json stylize_request(const ImageRGB& img,
                               std::string_view style_text,
                               const Embedding& style_embedding);

// Response bodies (server side). Used by the in-process mock server.
nlohmann::json embedding_response(const Embedding& e);
nlohmann::json image_encode_response(const ImageEncoding& enc);
nlohmann::json mask_response(const Mask& mask);
nlohmann::json stylize_response(const ImageRGB& img);
nlohmann::json health_response();

// Response parsing; BadResponse on any schema violation.
Embedding parse_embedding_response(const nlohmann::json& body,
                                   EmbeddingSource source);
ImageEncoding parse_image_encode_response(const nlohmann::json& body);
Mask parse_mask_response(const nlohmann::json& body);
ImageRGB parse_stylize_response(const nlohmann::json& body);
/// Returns the advertised embedding dimension; BadResponse if status != ok.
std::size_t parse_health_response(const nlohmann::json& body);

// Request parsing for servers; BadRequest on schema violation.
std::string parse_text_encode_request(const nlohmann::json& body);
ImageRGB parse_image_request(const nlohmann::json& body);
struct MaskRequest {
  std::string encoding_id;
  std::string object_text;
  Embedding text_embedding;
};
MaskRequest parse_mask_request(const nlohmann::json& body);
struct StylizeRequest {
  ImageRGB image;
  std::string style_text;
  Embedding style_embedding;
};
StylizeRequest parse_stylize_request(const nlohmann::json& body);

/// HTTP status for an error kind: 400 malformed body, 404 unknown
/// encoding, 422 empty mask, 503 model not loaded.
int http_status_for(ErrorKind kind);
nlohmann::json error_body(const Error& e);

}  // namespace mosaic::wire
