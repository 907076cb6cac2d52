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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mosaic/bench.hpp"
#include "mosaic/config.hpp"
#include "mosaic/corpus.hpp"
#include "mosaic/error.hpp"
#include "mosaic/pipeline.hpp"
#include "mosaic/prompt.hpp"

namespace {

using namespace mosaic;
using Values = std::map<std::string, std::string>;

/// Flag values recorded as config keys so they go through the same parsing
/// and validation as config files, and override them.
class Overrides {
 public:
  void option(CLI::App* app, const std::string& flag, const std::string& key,
              const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values_[key] = v; }, help);
  }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const Values& values() const { return values_; }

 private:
  Values values_;
};

void add_backend_flags(CLI::App* app, Overrides& o) {
  o.option(app, "--backend", "backend", "mock | http (default mock)");
  o.option(app, "--endpoint", "endpoint", "sidecar URL; defaults to $MOSAIC_ENDPOINT");
  o.option(app, "--timeout-ms", "timeout_ms", "per-request timeout in ms (default 30000)");
}

void add_run_flags(CLI::App* app, Overrides& o, std::string& config_path) {
  o.option(app, "--image", "image", "content image (PNG)");
  o.option(app, "--prompt", "prompt", "stylization prompt");
  add_backend_flags(app, o);
  o.option(app, "--overlap-policy", "overlap_policy", "last-wins | first-wins");
  o.option(app, "--uncovered", "uncovered", "content | background:<style>");
  o.option(app, "--cache-capacity", "cache.capacity", "encoding cache entries (default 8)");
  app->add_flag_callback("--no-cache", [&o] { o.set("cache.enabled", "false"); },
                         "bypass the encoding cache");
  o.option(app, "--seed", "seed", "seed recorded in the manifest");
  o.option(app, "--out", "out", "output directory (default mosaic-run)");
  o.option(app, "--workers", "workers", "worker threads (default 4)");
  o.option(app, "--on-empty-mask", "on_empty_mask", "skip | abort");
  app->add_option("--config", config_path, "key = value config file; flags override it");
}

template <typename Config>
Config load_config(Config cfg, const std::string& config_path, const Overrides& o) {
  if (!config_path.empty()) apply_config(cfg, load_config_file(config_path));
  apply_config(cfg, o.values());
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path);
}

int cmd_parse(const std::string& prompt, bool as_json) {
  if (!as_json) {
    std::cout << serialize_pairs(parse_prompt(Prompt{prompt})) << '\n';
    return 0;
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : parse_prompt_detailed(Prompt{prompt})) {
    out.push_back({{"ordinal", p.pair.ordinal},
                   {"object", p.pair.object_phrase},
                   {"style", p.pair.style_phrase},
                   {"object_offset", p.object_offset},
                   {"style_offset", p.style_offset}});
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct CorpusArgs {
  std::string classes, styles, templates, out = "-";
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

int cmd_corpus(const CorpusArgs& a) {
  const auto templates = a.templates.empty() ? default_templates() : load_templates(a.templates);
  const auto records =
      generate_corpus(load_lexicon(a.classes), load_lexicon(a.styles), templates, a.count, a.seed);
  std::ostringstream ss;
  write_corpus(ss, records);
  write_text(a.out, ss.str());
  std::cerr << "generated " << records.size() << " records\n";
  return 0;
}

int cmd_run(const PipelineConfig& cfg) {
  const PipelineResult r = run_pipeline(cfg);
  std::cout << "pairs    " << serialize_pairs(r.pairs) << '\n';
  std::cout << "encoding " << r.encoding.encoding_id << '\n';
  for (const auto& m : r.masks) {
    std::cout << "mask " << m.ordinal << "   "
              << (m.mask ? std::to_string(m.resolved.count()) + " px" : std::string("EmptyMask (skipped)"))
              << '\n';
  }
  std::printf("coverage covered=%.4f overlap=%.4f\n", r.coverage.covered_fraction,
              r.coverage.overlap_fraction);
  for (const auto& t : r.timings) {
    std::printf("  %-13s %10.3f ms  x%zu\n", std::string(to_string(t.stage)).c_str(),
                t.duration_ms, t.invocations);
  }
  std::cout << "wrote    " << cfg.out_dir.string() << '\n';
  return 0;
}

int cmd_eval(const EvalConfig& cfg) {
  const ScoreReport report = run_eval(cfg);
  const std::string text = to_json(report).dump(2) + "\n";
  if (cfg.report_path.empty()) {
    std::cout << text;
  } else {
    write_text(cfg.report_path.string(), text);
    std::cout << "aggregate "
              << (report.aggregate ? std::to_string(*report.aggregate) : std::string("null"))
              << "\nwrote " << cfg.report_path.string() << '\n';
  }
  return 0;
}

int cmd_bench(const PipelineConfig& cfg, std::size_t iterations, const std::string& json_path) {
  const BenchReport report = run_bench(cfg, iterations);
  std::cout << format_bench_table(report);
  if (!json_path.empty()) write_text(json_path, to_json(report).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mosaic: multi-object text-driven stylization pipeline"};
  app.require_subcommand(1);

  std::string prompt;
  bool parse_json = false;
  auto* parse = app.add_subcommand("parse", "print the serialized object/style pairs of a prompt");
  parse->add_option("--prompt", prompt, "prompt text")->required();
  parse->add_flag("--json", parse_json, "print pairs with character offsets as JSON");

  CorpusArgs corpus_args;
  auto* corpus = app.add_subcommand("corpus", "synthetic prompt corpora");
  corpus->require_subcommand(1);
  auto* gen = corpus->add_subcommand("gen", "generate a JSON-lines corpus");
  gen->add_option("--classes", corpus_args.classes, "class lexicon file")->required();
  gen->add_option("--styles", corpus_args.styles, "style lexicon file")->required();
  gen->add_option("--templates", corpus_args.templates, "template file (default built-ins)");
  gen->add_option("--count", corpus_args.count, "number of records")->required();
  gen->add_option("--seed", corpus_args.seed, "generator seed");
  gen->add_option("--out", corpus_args.out, "output file, - for stdout");

  Overrides run_flags;
  std::string run_config;
  auto* run = app.add_subcommand("run", "run the stylization pipeline and write artifacts");
  add_run_flags(run, run_flags, run_config);

  Overrides eval_flags;
  std::string eval_config;
  auto* eval = app.add_subcommand("eval", "patch-wise CLIP score of a finished run");
  eval_flags.option(eval, "--image", "image", "image to score (default: the run's composite)");
  eval_flags.option(eval, "--prompt", "prompt", "prompt; must agree with the run's pairs");
  eval_flags.option(eval, "--masks", "masks", "output directory of a previous run");
  add_backend_flags(eval, eval_flags);
  eval_flags.option(eval, "--seed", "seed", "crop sampling seed");
  eval_flags.option(eval, "--scale", "scale", "score multiplier (2.5 for CLIPScore)");
  eval_flags.option(eval, "--workers", "workers", "worker threads");
  eval_flags.option(eval, "--out", "report", "report file (default stdout)");
  eval->add_option("--config", eval_config, "key = value config file; flags override it");

  Overrides bench_flags;
  std::string bench_config;
  std::size_t iterations = 5;
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "per-stage latency over repeated runs");
  add_run_flags(bench, bench_flags, bench_config);
  bench->add_option("--iterations", iterations, "pipeline runs; the first is cold (default 5)");
  bench->add_option("--json", bench_json, "also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code_for(ErrorKind::kConfigError);
  }

  try {
    if (*parse) return cmd_parse(prompt, parse_json);
    if (*gen) return cmd_corpus(corpus_args);
    PipelineConfig defaults;
    defaults.out_dir = "mosaic-run";
    if (*run) return cmd_run(load_config(defaults, run_config, run_flags));
    if (*eval) return cmd_eval(load_config(EvalConfig{}, eval_config, eval_flags));
    if (*bench) {
      defaults.out_dir.clear();
      return cmd_bench(load_config(defaults, bench_config, bench_flags), iterations, bench_json);
    }
  } catch (const Error& e) {
    std::cerr << "mosaic: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "mosaic: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
