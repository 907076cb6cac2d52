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

#include "mosaic/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "mosaic/error.hpp"
#include "mosaic/image_io.hpp"
#include "mosaic/parallel.hpp"

namespace mosaic {

namespace fs = std::filesystem;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kParse: return "parse";
    case Stage::kEncodeText: return "encode_text";
    case Stage::kEncodeImage: return "encode_image";
    case Stage::kMask: return "mask";
    case Stage::kStylize: return "stylize";
    case Stage::kComposite: return "composite";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Times one stage and tags escaping errors with its name.
template <typename Fn>
auto timed(Stage stage, std::vector<StageTiming>& timings, Fn&& fn) {
  const auto start = Clock::now();
  auto record = [&](std::size_t invocations) {
    const std::chrono::duration<double, std::milli> elapsed =
        Clock::now() - start;
    timings.push_back({stage, elapsed.count(), invocations});
  };
  try {
    auto [value, invocations] = fn();
    record(invocations);
    return std::move(value);
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(std::string(to_string(stage)));
  }
}

}  // namespace

Pipeline::Pipeline(std::shared_ptr<const ModelBackend> backend,
                   std::size_t workers,
                   std::optional<std::size_t> cache_capacity)
    : backend_(std::move(backend)), workers_(std::max<std::size_t>(1, workers)) {
  if (!backend_) throw Error(ErrorKind::kConfigError, "no backend");
  if (cache_capacity) cache_.emplace(*cache_capacity);
}

ImageEncoding Pipeline::encode(const ImageRGB& content,
                               std::size_t& invocations) {
  if (!cache_) {
    ++invocations;
    return backend_->encode_image(content);
  }
  const auto before = cache_->stats().misses;
  ImageEncoding enc = cache_->get_or_encode(content, *backend_);
  invocations += cache_->stats().misses - before;
  return enc;
}

PipelineResult Pipeline::run(const ImageRGB& content, const std::string& prompt,
                             const CompositePolicy& policy,
                             EmptyMaskPolicy on_empty_mask) {
  PipelineResult result;
  result.content = content;
  auto& timings = result.timings;

  result.pairs = timed(Stage::kParse, timings, [&] {
    return std::pair{parse_prompt(Prompt{prompt}), std::size_t{1}};
  });
  const auto& pairs = result.pairs.pairs;

  std::vector<std::string> styles = result.pairs.distinct_styles();
  if (policy.uncovered == UncoveredPolicy::kBackgroundStyle &&
      std::find(styles.begin(), styles.end(), policy.background_style) ==
          styles.end()) {
    styles.push_back(policy.background_style);
  }

  // Text embeddings: one per pair for the mask prompts, one per distinct
  // style for the stylizer.
  std::vector<std::optional<Embedding>> object_emb(pairs.size());
  std::vector<std::optional<Embedding>> style_emb(styles.size());
  timed(Stage::kEncodeText, timings, [&] {
    const std::size_t total = pairs.size() + styles.size();
    parallel_for(total, workers_, [&](std::size_t i) {
      if (i < pairs.size()) {
        object_emb[i] = backend_->encode_text(pairs[i].object_phrase);
      } else {
        const std::size_t k = i - pairs.size();
        style_emb[k] = backend_->encode_text(styles[k]);
      }
    });
    return std::pair{0, total};
  });

  result.encoding = timed(Stage::kEncodeImage, timings, [&] {
    std::size_t invocations = 0;
    ImageEncoding enc = encode(content, invocations);
    return std::pair{std::move(enc), invocations};
  });

  result.masks.resize(pairs.size());
  timed(Stage::kMask, timings, [&] {
    std::size_t invocations = pairs.size();
    auto generate = [&](std::size_t i) {
      return backend_->generate_mask(result.encoding, pairs[i].object_phrase,
                                     *object_emb[i]);
    };
    auto one = [&](std::size_t i) {
      result.masks[i].ordinal = pairs[i].ordinal;
      try {
        result.masks[i].mask = generate(i);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kEmptyMask &&
            on_empty_mask == EmptyMaskPolicy::kSkip) {
          return;
        }
        throw;
      }
    };
    try {
      parallel_for(pairs.size(), workers_, one);
    } catch (const Error& e) {
      // A sidecar restart invalidates cached encodings; re-encode once.
      if (e.kind() != ErrorKind::kUnknownEncoding || !cache_) throw;
      cache_->invalidate(content);
      std::size_t extra = 0;
      result.encoding = encode(content, extra);
      invocations += pairs.size();
      parallel_for(pairs.size(), workers_, one);
    }
    return std::pair{0, invocations};
  });

  result.stylized.resize(styles.size());
  timed(Stage::kStylize, timings, [&] {
    parallel_for(styles.size(), workers_, [&](std::size_t k) {
      result.stylized[k] = {styles[k],
                            backend_->stylize(content, styles[k], *style_emb[k])};
    });
    return std::pair{0, styles.size()};
  });

  result.composite = timed(Stage::kComposite, timings, [&] {
    std::map<std::string, const ImageRGB*> frame_of;
    for (const auto& f : result.stylized) frame_of[f.style_phrase] = &f.image;

    std::vector<StyleAssignment> assignments;
    std::vector<Mask> present;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!result.masks[i].mask) continue;
      assignments.push_back({*result.masks[i].mask,
                             *frame_of.at(pairs[i].style_phrase),
                             pairs[i].ordinal});
      present.push_back(*result.masks[i].mask);
    }
    const ImageRGB* background =
        policy.uncovered == UncoveredPolicy::kBackgroundStyle
            ? frame_of.at(policy.background_style)
            : nullptr;
    ImageRGB out = composite(content, assignments, policy, background);

    const std::vector<Mask> resolved = resolve_overlaps(present, policy.overlap);
    std::size_t r = 0;
    for (auto& m : result.masks) {
      m.resolved = m.mask ? resolved[r++] : Mask(content.width, content.height);
    }
    result.coverage = coverage_report(present);
    return std::pair{std::move(out), std::size_t{1}};
  });

  if (cache_) result.cache_stats = cache_->stats();
  return result;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

std::string mask_file(std::size_t ordinal) {
  return "masks/mask_" + std::to_string(ordinal) + ".png";
}
std::string resolved_file(std::size_t ordinal) {
  return "masks/resolved_" + std::to_string(ordinal) + ".png";
}
std::string style_file(std::size_t k) {
  return "styles/style_" + std::to_string(k) + ".png";
}

}  // namespace

nlohmann::ordered_json make_manifest(const PipelineConfig& cfg,
                                     const PipelineResult& result) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = 1;
  j["config"] = to_json(cfg);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : result.pairs.pairs) {
    pairs.push_back(
        {{"ordinal", p.ordinal}, {"object", p.object_phrase}, {"style", p.style_phrase}});
  }
  j["pairs"] = std::move(pairs);
  j["serialized"] = serialize_pairs(result.pairs);
  j["image"] = {{"width", result.content.width},
                {"height", result.content.height},
                {"encoding_id", result.encoding.encoding_id}};
  ordered_json masks = ordered_json::array();
  for (const auto& m : result.masks) {
    ordered_json mj;
    mj["ordinal"] = m.ordinal;
    mj["status"] = m.mask ? "ok" : "EmptyMask";
    mj["file"] = m.mask ? ordered_json(mask_file(m.ordinal)) : ordered_json(nullptr);
    mj["resolved_file"] = resolved_file(m.ordinal);
    mj["pixels"] = m.mask ? m.mask->count() : 0;
    mj["resolved_pixels"] = m.resolved.count();
    masks.push_back(std::move(mj));
  }
  j["masks"] = std::move(masks);
  ordered_json styles = ordered_json::array();
  for (std::size_t k = 0; k < result.stylized.size(); ++k) {
    styles.push_back({{"style", result.stylized[k].style_phrase},
                      {"file", style_file(k)}});
  }
  j["styles"] = std::move(styles);
  j["composite"] = kCompositeName;
  j["coverage"] = {{"covered", result.coverage.covered_fraction},
                   {"overlap", result.coverage.overlap_fraction}};
  j["cache"] = {{"hits", result.cache_stats.hits},
                {"misses", result.cache_stats.misses},
                {"evictions", result.cache_stats.evictions},
                {"capacity", result.cache_stats.capacity}};
  ordered_json timings = ordered_json::array();
  for (const auto& t : result.timings) {
    timings.push_back({{"stage", std::string(to_string(t.stage))},
                       {"ms", t.duration_ms},
                       {"count", t.invocations}});
  }
  j["timings"] = std::move(timings);
  return j;
}

void write_artifacts(const PipelineConfig& cfg, const PipelineResult& result) {
  const fs::path& out = cfg.out_dir;
  std::error_code ec;
  fs::create_directories(out / "masks", ec);
  if (!ec) fs::create_directories(out / "styles", ec);
  if (ec) {
    throw Error(ErrorKind::kIoError, "write",
                "cannot create " + out.string() + ": " + ec.message());
  }
  try {
    write_png(out / kCompositeName, result.composite);
    for (const auto& m : result.masks) {
      if (m.mask) write_mask_png(out / mask_file(m.ordinal), *m.mask);
      write_mask_png(out / resolved_file(m.ordinal), m.resolved);
    }
    for (std::size_t k = 0; k < result.stylized.size(); ++k) {
      write_png(out / style_file(k), result.stylized[k].image);
    }
    std::ofstream manifest(out / kManifestName, std::ios::trunc);
    manifest << make_manifest(cfg, result).dump(2) << '\n';
    if (!manifest) {
      throw Error(ErrorKind::kIoError, "cannot write manifest");
    }
  } catch (const Error& e) {
    throw e.with_stage("write");
  }
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
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
  Pipeline pipeline(backend, cfg.workers,
                    cfg.use_cache ? std::optional(cfg.cache_capacity)
                                  : std::nullopt);
  PipelineResult result =
      pipeline.run(content, cfg.prompt, cfg.policy, cfg.on_empty_mask);
  if (!cfg.out_dir.empty()) write_artifacts(cfg, result);
  return result;
}

// ---------------------------------------------------------------------------
// Evaluation of a finished run

RunArtifacts load_run(const fs::path& run_dir) {
  const fs::path manifest_path = run_dir / kManifestName;
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorKind::kMissingArtifacts,
                "no " + manifest_path.string());
  }
  RunArtifacts run;
  try {
    run.manifest = nlohmann::json::parse(in);
    const auto& m = run.manifest;
    for (const auto& p : m.at("pairs")) {
      run.pairs.pairs.push_back({p.at("object").get<std::string>(),
                                 p.at("style").get<std::string>(),
                                 p.at("ordinal").get<std::size_t>()});
    }
    validate(run.pairs);
    const auto width = m.at("image").at("width").get<std::uint32_t>();
    const auto height = m.at("image").at("height").get<std::uint32_t>();
    const auto& masks = m.at("masks");
    if (masks.size() != run.pairs.pairs.size()) {
      throw Error(ErrorKind::kMissingArtifacts, "mask list length mismatch");
    }
    for (const auto& mj : masks) {
      if (mj.at("file").is_null()) {
        run.masks.emplace_back(width, height);
        continue;
      }
      const fs::path file = run_dir / mj.at("file").get<std::string>();
      if (!fs::exists(file)) {
        throw Error(ErrorKind::kMissingArtifacts, "missing " + file.string());
      }
      run.masks.push_back(read_mask_png(file));
    }
    for (const auto& sj : m.at("styles")) {
      const fs::path file = run_dir / sj.at("file").get<std::string>();
      if (!fs::exists(file)) {
        throw Error(ErrorKind::kMissingArtifacts, "missing " + file.string());
      }
      run.stylized.push_back({sj.at("style").get<std::string>(), read_png(file)});
    }
    const auto& cfg = m.at("config");
    run.policy.overlap =
        parse_overlap_policy(cfg.at("overlap_policy").get<std::string>());
    parse_uncovered_policy(cfg.at("uncovered").get<std::string>(), run.policy);
    run.composite_path = run_dir / m.at("composite").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMissingArtifacts,
                "malformed manifest: " + std::string(e.what()));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kMissingArtifacts) throw;
    throw Error(ErrorKind::kMissingArtifacts,
                "manifest " + manifest_path.string() + ": " + e.detail());
  }
  return run;
}

ScoreReport run_eval(const EvalConfig& cfg, const ModelBackend& backend) {
  RunArtifacts run;
  try {
    validate(cfg);
    run = load_run(cfg.run_dir);
  } catch (const Error& e) {
    throw e.with_stage("load");
  }
  SegmentedPrompt pairs = run.pairs;
  if (!text::trim(cfg.prompt).empty()) {
    try {
      pairs = parse_prompt(Prompt{cfg.prompt});
    } catch (const Error& e) {
      throw e.with_stage("parse");
    }
    if (pairs.pairs.size() != run.masks.size()) {
      throw Error(ErrorKind::kInvalidArgument, "parse",
                  "prompt has " + std::to_string(pairs.pairs.size()) +
                      " pairs but the run has " +
                      std::to_string(run.masks.size()) + " masks");
    }
  }
  ImageRGB image;
  try {
    image = read_png(cfg.image_path.empty() ? run.composite_path
                                            : cfg.image_path);
  } catch (const Error& e) {
    throw e.with_stage("load");
  }
  try {
    return patchwise_clip_score(image, pairs, run.masks, backend, backend,
                                cfg.seed, {kCropsPerObject, cfg.scale, cfg.workers});
  } catch (const Error& e) {
    throw e.with_stage("eval");
  }
}

ScoreReport run_eval(const EvalConfig& cfg) {
  BackendConfig backend = cfg.backend;
  std::shared_ptr<const ModelBackend> model;
  try {
    finalize(backend);
    model = make_backend(backend);
  } catch (const Error& e) {
    throw e.with_stage("connect");
  }
  return run_eval(cfg, *model);
}

}  // namespace mosaic
