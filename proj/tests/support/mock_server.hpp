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

// In-process loopback server speaking the sidecar protocol on top of any
// ModelBackend. Lets the HTTP client, the golden protocol tests and the
// smoke suite run hermetically.

#include <httplib.h>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"
#include "mosaic/error.hpp"
#include "mosaic/wire.hpp"

namespace mosaic::testing {

class MockSidecarServer {
 public:
  explicit MockSidecarServer(std::shared_ptr<const ModelBackend> backend)
      : backend_(std::move(backend)) {
    using nlohmann::json;
    server_.Get(wire::kHealthPath, [this](const httplib::Request&,
                                          httplib::Response& res) {
      json body = wire::health_response();
      body["embedding_dim"] = health_dim_.load();
      if (!ready_) {
        res.status = 503;
        body["status"] = "loading";
      }
      res.set_content(body.dump(), "application/json");
    });
    route(wire::kTextEncodePath, [this](const json& body) {
      return wire::embedding_response(
          backend_->encode_text(wire::parse_text_encode_request(body)));
    });
    route(wire::kImageEncodePath, [this](const json& body) {
      ImageEncoding enc = backend_->encode_image(wire::parse_image_request(body));
      std::lock_guard lock(mu_);
      encodings_[enc.encoding_id] = enc;
      ++image_encodes_;
      return wire::image_encode_response(enc);
    });
    route(wire::kImageEmbedPath, [this](const json& body) {
      return wire::embedding_response(
          backend_->embed_image(wire::parse_image_request(body)));
    });
    route(wire::kMaskPath, [this](const json& body) {
      auto req = wire::parse_mask_request(body);
      ImageEncoding enc;
      {
        std::lock_guard lock(mu_);
        auto it = encodings_.find(req.encoding_id);
        if (it == encodings_.end()) {
          throw Error(ErrorKind::kUnknownEncoding, req.encoding_id);
        }
        enc = it->second;
      }
      return wire::mask_response(
          backend_->generate_mask(enc, req.object_text, req.text_embedding));
    });
    route(wire::kStylizePath, [this](const json& body) {
      auto req = wire::parse_stylize_request(body);
      return wire::stylize_response(
          backend_->stylize(req.image, req.style_text, req.style_embedding));
    });

    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockSidecarServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  MockSidecarServer(const MockSidecarServer&) = delete;
  MockSidecarServer& operator=(const MockSidecarServer&) = delete;

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

  /// Last request body received per path (raw bytes).
  std::string last_body(const std::string& path) const {
    std::lock_guard lock(mu_);
    auto it = bodies_.find(path);
    return it == bodies_.end() ? std::string{} : it->second;
  }

  /// Forgets issued encodings, like a sidecar restart.
  void forget_encodings() {
    std::lock_guard lock(mu_);
    encodings_.clear();
  }

  int image_encodes() const {
    std::lock_guard lock(mu_);
    return image_encodes_;
  }

  void set_ready(bool ready) { ready_ = ready; }
  void set_health_dim(std::size_t dim) { health_dim_ = dim; }

 private:
  template <typename Handler>
  void route(const char* path, Handler handler) {
    server_.Post(path, [this, path, handler](const httplib::Request& req,
                                             httplib::Response& res) {
      {
        std::lock_guard lock(mu_);
        bodies_[path] = req.body;
      }
      if (!ready_) {
        res.status = 503;
        res.set_content(R"({"error":"BackendUnavailable","message":"loading"})",
                        "application/json");
        return;
      }
      const auto body = nlohmann::json::parse(req.body, nullptr, false);
      try {
        if (body.is_discarded()) {
          throw Error(ErrorKind::kBadRequest, "body is not JSON");
        }
        res.set_content(handler(body).dump(), "application/json");
      } catch (const Error& e) {
        res.status = wire::http_status_for(e.kind());
        res.set_content(wire::error_body(e).dump(), "application/json");
      }
    });
  }

  std::shared_ptr<const ModelBackend> backend_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  mutable std::mutex mu_;
  std::map<std::string, std::string> bodies_;
  std::map<std::string, ImageEncoding> encodings_;
  int image_encodes_ = 0;
  std::atomic<bool> ready_{true};
  std::atomic<std::size_t> health_dim_{kEmbeddingDim};
};

}  // namespace mosaic::testing
