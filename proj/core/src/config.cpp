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

#include "mosaic/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "mosaic/error.hpp"
#include "mosaic/http_backend.hpp"
#include "mosaic/prompt.hpp"

namespace mosaic {

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "image",   "prompt",         "backend", "endpoint", "timeout_ms",
    "overlap_policy", "uncovered", "cache.capacity", "cache.enabled",
    "seed",    "out",            "workers", "on_empty_mask", "masks",
    "scale",   "report"};

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::kConfigError,
                std::string(key) + ": '" + std::string(value) +
                    "' is not a valid number");
  }
  return out;
}

double parse_double(std::string_view key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw Error(ErrorKind::kConfigError,
                std::string(key) + ": '" + value + "' is not a number");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorKind::kConfigError,
              std::string(key) + ": expected true|false");
}

bool apply_backend_key(BackendConfig& b, const std::string& key,
                       const std::string& value) {
  if (key == "backend") {
    b.kind = parse_backend_kind(value);
  } else if (key == "endpoint") {
    b.endpoint = value;
  } else if (key == "timeout_ms") {
    b.timeout = std::chrono::milliseconds(parse_number<std::int64_t>(key, value));
  } else {
    return false;
  }
  return true;
}

[[noreturn]] void not_applicable(const std::string& key, const char* what) {
  throw Error(ErrorKind::kConfigError,
              "key '" + key + "' does not apply to " + what);
}

}  // namespace

BackendKind parse_backend_kind(std::string_view text) {
  if (text == "mock") return BackendKind::kMock;
  if (text == "http") return BackendKind::kHttp;
  throw Error(ErrorKind::kConfigError,
              "backend '" + std::string(text) + "' (expected mock|http)");
}

std::string to_string(BackendKind kind) {
  return kind == BackendKind::kMock ? "mock" : "http";
}

EmptyMaskPolicy parse_empty_mask_policy(std::string_view text) {
  if (text == "skip") return EmptyMaskPolicy::kSkip;
  if (text == "abort") return EmptyMaskPolicy::kAbort;
  throw Error(ErrorKind::kConfigError,
              "on_empty_mask '" + std::string(text) + "' (expected skip|abort)");
}

std::string to_string(EmptyMaskPolicy policy) {
  return policy == EmptyMaskPolicy::kSkip ? "skip" : "abort";
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kConfigError,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) {
      throw Error(ErrorKind::kConfigError,
                  "line " + std::to_string(line_no) + ": unknown key '" + key +
                      "'");
    }
    if (!out.emplace(key, std::move(value)).second) {
      throw Error(ErrorKind::kConfigError,
                  "line " + std::to_string(line_no) + ": duplicate key '" +
                      key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> load_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kConfigError, "cannot read config " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(PipelineConfig& cfg,
                  const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (apply_backend_key(cfg.backend, key, value)) continue;
    if (key == "image") {
      cfg.image_path = value;
    } else if (key == "prompt") {
      cfg.prompt = value;
    } else if (key == "overlap_policy") {
      cfg.policy.overlap = parse_overlap_policy(value);
    } else if (key == "uncovered") {
      parse_uncovered_policy(value, cfg.policy);
    } else if (key == "cache.capacity") {
      cfg.cache_capacity = parse_number<std::size_t>(key, value);
    } else if (key == "cache.enabled") {
      cfg.use_cache = parse_bool(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "workers") {
      cfg.workers = parse_number<std::size_t>(key, value);
    } else if (key == "on_empty_mask") {
      cfg.on_empty_mask = parse_empty_mask_policy(value);
    } else {
      not_applicable(key, "run/bench");
    }
  }
}

void apply_config(EvalConfig& cfg,
                  const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (apply_backend_key(cfg.backend, key, value)) continue;
    if (key == "image") {
      cfg.image_path = value;
    } else if (key == "prompt") {
      cfg.prompt = value;
    } else if (key == "masks") {
      cfg.run_dir = value;
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "scale") {
      cfg.scale = parse_double(key, value);
    } else if (key == "workers") {
      cfg.workers = parse_number<std::size_t>(key, value);
    } else if (key == "report") {
      cfg.report_path = value;
    } else {
      not_applicable(key, "eval");
    }
  }
}

void finalize(BackendConfig& backend) {
  if (backend.endpoint.empty()) {
    if (const char* env = std::getenv(kEndpointEnv); env != nullptr) {
      backend.endpoint = env;
    }
  }
  if (backend.kind == BackendKind::kHttp && backend.endpoint.empty()) {
    throw Error(ErrorKind::kConfigError,
                std::string("http backend needs --endpoint or ") +
                    kEndpointEnv);
  }
  if (backend.timeout.count() <= 0) {
    throw Error(ErrorKind::kConfigError, "timeout_ms must be positive");
  }
}

void validate(const PipelineConfig& cfg) {
  if (cfg.image_path.empty()) {
    throw Error(ErrorKind::kConfigError, "no image given");
  }
  if (text::trim(cfg.prompt).empty()) {
    throw Error(ErrorKind::kConfigError, "no prompt given");
  }
  if (cfg.cache_capacity == 0) {
    throw Error(ErrorKind::kConfigError, "cache.capacity must be >= 1");
  }
  if (cfg.workers == 0) {
    throw Error(ErrorKind::kConfigError, "workers must be >= 1");
  }
  if (cfg.policy.uncovered == UncoveredPolicy::kBackgroundStyle &&
      text::trim(cfg.policy.background_style).empty()) {
    throw Error(ErrorKind::kConfigError, "background style is empty");
  }
  if (cfg.backend.timeout.count() <= 0) {
    throw Error(ErrorKind::kConfigError, "timeout_ms must be positive");
  }
}

void validate(const EvalConfig& cfg) {
  if (cfg.run_dir.empty()) {
    throw Error(ErrorKind::kConfigError, "no --masks run directory given");
  }
  if (cfg.workers == 0) {
    throw Error(ErrorKind::kConfigError, "workers must be >= 1");
  }
  if (!(cfg.scale > 0.0)) {
    throw Error(ErrorKind::kConfigError, "scale must be positive");
  }
}

nlohmann::ordered_json to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["image"] = cfg.image_path.string();
  j["prompt"] = cfg.prompt;
  j["backend"] = to_string(cfg.backend.kind);
  j["endpoint"] = cfg.backend.endpoint;
  j["timeout_ms"] = cfg.backend.timeout.count();
  j["overlap_policy"] = to_string(cfg.policy.overlap);
  j["uncovered"] = uncovered_to_string(cfg.policy);
  j["cache.capacity"] = cfg.cache_capacity;
  j["cache.enabled"] = cfg.use_cache;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["on_empty_mask"] = to_string(cfg.on_empty_mask);
  return j;
}

std::shared_ptr<const ModelBackend> make_backend(const BackendConfig& cfg) {
  if (cfg.kind == BackendKind::kMock) return std::make_shared<MockBackend>();
  auto http = std::make_shared<HttpBackend>(
      HttpOptions{cfg.endpoint, cfg.timeout, std::nullopt});
  http->handshake();
  return http;
}

}  // namespace mosaic
