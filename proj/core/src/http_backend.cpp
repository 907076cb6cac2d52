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

#include "mosaic/http_backend.hpp"

#include <httplib.h>

#include "mosaic/error.hpp"
#include "mosaic/wire.hpp"

namespace mosaic {

namespace {

ErrorKind kind_for_status(int status) {
  switch (status) {
    case 400: return ErrorKind::kBadRequest;
    case 404: return ErrorKind::kUnknownEncoding;
    case 413: return ErrorKind::kImageTooLarge;
    case 422: return ErrorKind::kEmptyMask;
    case 503: return ErrorKind::kBackendUnavailable;
    default: return ErrorKind::kBadResponse;
  }
}

nlohmann::json handle(const httplib::Result& res, const std::string& what) {
  if (!res) {
    throw Error(ErrorKind::kBackendUnavailable,
                what + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    std::string message = "HTTP " + std::to_string(res->status);
    const auto body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_object() && body.contains("message") &&
        body["message"].is_string()) {
      message += ": " + body["message"].get<std::string>();
    }
    throw Error(kind_for_status(res->status), what + " " + message);
  }
  auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded()) {
    throw Error(ErrorKind::kBadResponse, what + ": body is not JSON");
  }
  return body;
}

}  // namespace

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) {
    throw Error(ErrorKind::kConfigError, "http backend needs an endpoint");
  }
  if (options_.timeout.count() <= 0) {
    throw Error(ErrorKind::kConfigError, "request timeout must be positive");
  }
}

nlohmann::json HttpBackend::post(const char* path,
                                 const nlohmann::json& body) const {
  httplib::Client client(options_.endpoint);
  const auto t = options_.timeout;
  client.set_connection_timeout(t);
  client.set_read_timeout(t);
  client.set_write_timeout(t);
  return handle(client.Post(path, body.dump(), "application/json"),
                std::string("POST ") + path);
}

nlohmann::json HttpBackend::get(const char* path) const {
  httplib::Client client(options_.endpoint);
  const auto t = options_.timeout;
  client.set_connection_timeout(t);
  client.set_read_timeout(t);
  return handle(client.Get(path), std::string("GET ") + path);
}

void HttpBackend::handshake() const {
  const std::size_t dim = wire::parse_health_response(get(wire::kHealthPath));
  if (dim != kEmbeddingDim) {
    throw Error(ErrorKind::kBadResponse,
                "sidecar embedding_dim " + std::to_string(dim) +
                    ", expected " + std::to_string(kEmbeddingDim));
  }
}

Embedding HttpBackend::do_encode_text(std::string_view text) const {
  return wire::parse_embedding_response(
      post(wire::kTextEncodePath, wire::text_encode_request(text)),
      EmbeddingSource::kText);
}

ImageEncoding HttpBackend::do_encode_image(const ImageRGB& img) const {
  return wire::parse_image_encode_response(
      post(wire::kImageEncodePath, wire::image_encode_request(img)));
}

Embedding HttpBackend::do_embed_image(const ImageRGB& img) const {
  return wire::parse_embedding_response(
      post(wire::kImageEmbedPath, wire::image_embed_request(img)),
      EmbeddingSource::kImageCrop);
}

Mask HttpBackend::do_generate_mask(const ImageEncoding& enc,
                                   std::string_view object_text,
                                   const Embedding& text_embedding) const {
  return wire::parse_mask_response(
      post(wire::kMaskPath,
           wire::mask_request(enc, object_text, text_embedding)));
}

ImageRGB HttpBackend::do_stylize(const ImageRGB& img,
                                 std::string_view style_phrase,
                                 const Embedding& style_embedding) const {
  return wire::parse_stylize_response(
      post(wire::kStylizePath,
           wire::stylize_request(img, style_phrase, style_embedding)));
}

}  // namespace mosaic
