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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"
#include "mosaic/compositor.hpp"

namespace mosaic {

enum class BackendKind { kMock, kHttp };
enum class EmptyMaskPolicy { kSkip, kAbort };

BackendKind parse_backend_kind(std::string_view text);
std::string to_string(BackendKind kind);
EmptyMaskPolicy parse_empty_mask_policy(std::string_view text);
std::string to_string(EmptyMaskPolicy policy);

/// Environment variable consulted when no endpoint is configured.
inline constexpr const char* kEndpointEnv = "MOSAIC_ENDPOINT";

struct BackendConfig {
  BackendKind kind = BackendKind::kMock;
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
};

struct PipelineConfig {
  std::filesystem::path image_path;
  std::string prompt;
  BackendConfig backend;
  CompositePolicy policy;
  std::size_t cache_capacity = 8;
  bool use_cache = true;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  std::size_t workers = 4;
  EmptyMaskPolicy on_empty_mask = EmptyMaskPolicy::kSkip;
};

struct EvalConfig {
  /// Image to score; defaults to the run's composite.png.
  std::filesystem::path image_path;
  /// Optional; when set its pairs must agree with the run manifest.
  std::string prompt;
  /// Output directory of a previous run (holds manifest.json and masks).
  std::filesystem::path run_dir;
  BackendConfig backend;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::size_t workers = 4;
  std::filesystem::path report_path;
};

/// Documented `key = value` config format. '#' starts a comment line.
/// Keys (all optional):
///   image, prompt, backend (mock|http), endpoint, timeout_ms,
///   overlap_policy (last-wins|first-wins), uncovered (content|background:S),
///   cache.capacity, cache.enabled (true|false), seed, out, workers,
///   on_empty_mask (skip|abort), masks, scale, report
/// Unknown keys and duplicate keys are ConfigError.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> load_config_file(
    const std::filesystem::path& path);

/// Applies file values; throws ConfigError on keys the target ignores.
void apply_config(PipelineConfig& cfg,
                  const std::map<std::string, std::string>& values);
void apply_config(EvalConfig& cfg,
                  const std::map<std::string, std::string>& values);

/// Endpoint fallback from MOSAIC_ENDPOINT, then shape checks. ConfigError.
void finalize(BackendConfig& backend);
void validate(const PipelineConfig& cfg);
void validate(const EvalConfig& cfg);

/// Config echo written to manifests (output directory excluded so that
/// two runs into different directories produce identical manifests).
nlohmann::ordered_json to_json(const PipelineConfig& cfg);

std::shared_ptr<const ModelBackend> make_backend(const BackendConfig& cfg);

}  // namespace mosaic
