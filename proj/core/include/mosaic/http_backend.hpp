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

#include <chrono>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"

namespace mosaic {

struct HttpOptions {
  /// e.g. "http://127.0.0.1:8765"
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
  std::optional<std::size_t> max_pixels;
};

/// Client for the model sidecar protocol. Each call opens its own
/// connection so concurrent requests never share client state.
class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(HttpOptions options);

  std::string name() const override { return "http"; }
  std::optional<std::size_t> max_pixels() const override {
    return options_.max_pixels;
  }

  /// GET /v1/health; BackendUnavailable if unreachable or not ready,
  /// BadResponse if the advertised embedding width is not 512.
  void handshake() const;

  const HttpOptions& options() const noexcept { return options_; }

 protected:
  Embedding do_encode_text(std::string_view text) const override;
  ImageEncoding do_encode_image(const ImageRGB& img) const override;
  Embedding do_embed_image(const ImageRGB& img) const override;
  Mask do_generate_mask(const ImageEncoding& enc, std::string_view object_text,
                        const Embedding& text_embedding) const override;
  ImageRGB do_stylize(const ImageRGB& img, std::string_view style_phrase,
                      const Embedding& style_embedding) const override;

 private:
  nlohmann::json post(const char* path, const nlohmann::json& body) const;
  nlohmann::json get(const char* path) const;

  HttpOptions options_;
};

}  // namespace mosaic
