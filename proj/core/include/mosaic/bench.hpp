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

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mosaic/pipeline.hpp"

namespace mosaic {

struct StageStats {
  std::string stage;  // one of the six stages, or "total"
  double median_ms = 0.0;
  double mean_ms = 0.0;
  /// Summed over all iterations of the phase.
  std::size_t invocations = 0;
  std::size_t samples = 0;
};

/// Per-stage latency over repeated runs. The first iteration starts from an
/// empty encoding cache (cold); the rest reuse it (warm).
struct BenchReport {
  std::size_t iterations = 0;
  std::string backend;
  std::vector<StageStats> cold;
  std::vector<StageStats> warm;
};

BenchReport run_bench(const ModelBackend& backend, const ImageRGB& content,
                      const PipelineConfig& cfg, std::size_t iterations);
/// Loads cfg.image_path and builds the configured backend.
BenchReport run_bench(const PipelineConfig& cfg, std::size_t iterations);

/// Aligned text table: stage | cold ms | warm median | warm mean | calls.
std::string format_bench_table(const BenchReport& report);
nlohmann::ordered_json to_json(const BenchReport& report);

double median(std::vector<double> values);

}  // namespace mosaic
