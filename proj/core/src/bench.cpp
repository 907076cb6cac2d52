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

#include "mosaic/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "mosaic/error.hpp"
#include "mosaic/image_io.hpp"

namespace mosaic {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

std::vector<StageStats> summarize(
    const std::vector<std::vector<StageTiming>>& runs) {
  std::vector<StageStats> out;
  if (runs.empty()) return out;
  std::vector<double> totals(runs.size(), 0.0);
  for (Stage stage : kAllStages) {
    std::vector<double> ms;
    std::size_t calls = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (const auto& t : runs[r]) {
        if (t.stage != stage) continue;
        ms.push_back(t.duration_ms);
        calls += t.invocations;
        totals[r] += t.duration_ms;
      }
    }
    const double mean =
        ms.empty() ? 0.0
                   : std::accumulate(ms.begin(), ms.end(), 0.0) /
                         static_cast<double>(ms.size());
    out.push_back({std::string(to_string(stage)), median(ms), mean, calls,
                   ms.size()});
  }
  const double total_mean = std::accumulate(totals.begin(), totals.end(), 0.0) /
                            static_cast<double>(totals.size());
  out.push_back({"total", median(totals), total_mean, 0, totals.size()});
  return out;
}

}  // namespace

BenchReport run_bench(const ModelBackend& backend, const ImageRGB& content,
                      const PipelineConfig& cfg, std::size_t iterations) {
  if (iterations == 0) {
    throw Error(ErrorKind::kConfigError, "iterations must be >= 1");
  }
  // Non-owning: the caller keeps `backend` alive for the duration.
  std::shared_ptr<const ModelBackend> handle(&backend,
                                             [](const ModelBackend*) {});
  Pipeline pipeline(handle, cfg.workers,
                    cfg.use_cache ? std::optional(cfg.cache_capacity)
                                  : std::nullopt);
  std::vector<std::vector<StageTiming>> cold;
  std::vector<std::vector<StageTiming>> warm;
  for (std::size_t i = 0; i < iterations; ++i) {
    PipelineResult r =
        pipeline.run(content, cfg.prompt, cfg.policy, cfg.on_empty_mask);
    (i == 0 ? cold : warm).push_back(std::move(r.timings));
  }
  BenchReport report;
  report.iterations = iterations;
  report.backend = backend.name();
  report.cold = summarize(cold);
  report.warm = summarize(warm);
  return report;
}

BenchReport run_bench(const PipelineConfig& cfg, std::size_t iterations) {
  try {
    validate(cfg);
  } catch (const Error& e) {
    throw e.with_stage("config");
  }
  ImageRGB content;
  try {
    content = read_png(cfg.image_path);
  } catch (const Error& e) {
    throw e.with_stage("load");
  }
  std::shared_ptr<const ModelBackend> backend;
  try {
    BackendConfig backend_cfg = cfg.backend;
    finalize(backend_cfg);
    backend = make_backend(backend_cfg);
  } catch (const Error& e) {
    throw e.with_stage("connect");
  }
  return run_bench(*backend, content, cfg, iterations);
}

std::string format_bench_table(const BenchReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line),
                "backend=%s iterations=%zu (1 cold, %zu warm)\n",
                report.backend.c_str(), report.iterations,
                report.iterations - 1);
  out += line;
  std::snprintf(line, sizeof(line), "%-14s %12s %8s %14s %14s %8s\n", "stage",
                "cold ms", "calls", "warm median", "warm mean", "calls");
  out += line;
  for (std::size_t i = 0; i < report.cold.size(); ++i) {
    const StageStats& c = report.cold[i];
    if (report.warm.empty()) {
      std::snprintf(line, sizeof(line), "%-14s %12.3f %8zu %14s %14s %8s\n",
                    c.stage.c_str(), c.median_ms, c.invocations, "-", "-", "-");
    } else {
      const StageStats& w = report.warm[i];
      std::snprintf(line, sizeof(line), "%-14s %12.3f %8zu %14.3f %14.3f %8zu\n",
                    c.stage.c_str(), c.median_ms, c.invocations, w.median_ms,
                    w.mean_ms, w.invocations);
    }
    out += line;
  }
  return out;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
  auto phase = [](const std::vector<StageStats>& stats) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : stats) {
      arr.push_back({{"stage", s.stage},
                     {"median_ms", s.median_ms},
                     {"mean_ms", s.mean_ms},
                     {"count", s.invocations},
                     {"samples", s.samples}});
    }
    return arr;
  };
  nlohmann::ordered_json j;
  j["backend"] = report.backend;
  j["iterations"] = report.iterations;
  j["cold"] = phase(report.cold);
  j["warm"] = phase(report.warm);
  return j;
}

}  // namespace mosaic
