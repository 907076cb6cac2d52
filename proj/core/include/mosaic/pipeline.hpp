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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mosaic/backend.hpp"
#include "mosaic/compositor.hpp"
#include "mosaic/config.hpp"
#include "mosaic/enc_cache.hpp"
#include "mosaic/evaluator.hpp"
#include "mosaic/prompt.hpp"

namespace mosaic {

enum class Stage { kParse, kEncodeText, kEncodeImage, kMask, kStylize, kComposite };

inline constexpr std::array<Stage, 6> kAllStages{
    Stage::kParse, Stage::kEncodeText, Stage::kEncodeImage,
    Stage::kMask,  Stage::kStylize,    Stage::kComposite};

std::string_view to_string(Stage stage);

struct StageTiming {
  Stage stage = Stage::kParse;
  double duration_ms = 0.0;
  /// Backend (or function) invocations made by this stage. For
  /// encode_image this counts real encodes, so cache hits contribute 0.
  std::size_t invocations = 0;
};

struct StylizedFrame {
  std::string style_phrase;
  ImageRGB image;
};

struct ObjectMask {
  std::size_t ordinal = 0;
  /// nullopt when the backend reported EmptyMask and the object was skipped.
  std::optional<Mask> mask;
  /// After overlap resolution; empty frame for skipped objects.
  Mask resolved;
};

struct PipelineResult {
  SegmentedPrompt pairs;
  ImageRGB content;
  ImageEncoding encoding;
  std::vector<ObjectMask> masks;
  /// One frame per distinct style, first-appearance order; a background
  /// style not used by any pair is appended last.
  std::vector<StylizedFrame> stylized;
  ImageRGB composite;
  Coverage coverage;
  CacheStats cache_stats;
  std::vector<StageTiming> timings;
};

/// Runs parse -> encode_text -> encode_image (cached) -> mask -> stylize
/// -> resolve_overlaps -> composite. Keeps its encoding cache across runs,
/// so a second run on the same image performs no image encode.
/// Errors are rethrown tagged with the failing stage.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<const ModelBackend> backend, std::size_t workers,
           std::optional<std::size_t> cache_capacity);

  PipelineResult run(const ImageRGB& content, const std::string& prompt,
                     const CompositePolicy& policy,
                     EmptyMaskPolicy on_empty_mask = EmptyMaskPolicy::kSkip);

  const ModelBackend& backend() const noexcept { return *backend_; }
  /// nullptr when caching is disabled.
  EncodingCache* cache() noexcept { return cache_ ? &*cache_ : nullptr; }

 private:
  ImageEncoding encode(const ImageRGB& content, std::size_t& invocations);

  std::shared_ptr<const ModelBackend> backend_;
  std::size_t workers_;
  std::optional<EncodingCache> cache_;
};

/// Loads the image, runs the pipeline and persists artifacts to
/// cfg.out_dir: composite.png, masks/mask_<i>.png, masks/resolved_<i>.png,
/// styles/style_<k>.png and manifest.json. Nothing is written unless the
/// whole pipeline succeeded.
PipelineResult run_pipeline(const PipelineConfig& cfg);

void write_artifacts(const PipelineConfig& cfg, const PipelineResult& result);
nlohmann::ordered_json make_manifest(const PipelineConfig& cfg,
                                     const PipelineResult& result);

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kCompositeName = "composite.png";

/// Artifacts of a finished run, read back from its manifest.
struct RunArtifacts {
  nlohmann::json manifest;
  SegmentedPrompt pairs;
  /// Raw object masks; an empty Mask of the frame size for skipped objects.
  std::vector<Mask> masks;
  std::vector<StylizedFrame> stylized;
  CompositePolicy policy;
  std::filesystem::path composite_path;
};

/// MissingArtifacts when the manifest or a file it lists is absent.
RunArtifacts load_run(const std::filesystem::path& run_dir);

/// Scores a previous run's composite (or cfg.image_path) with the masks
/// listed in its manifest.
ScoreReport run_eval(const EvalConfig& cfg);
ScoreReport run_eval(const EvalConfig& cfg, const ModelBackend& backend);

}  // namespace mosaic
