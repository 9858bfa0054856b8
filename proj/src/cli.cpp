// Copyright 2026 The contam-audit Authors
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

#include "contam/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "contam/harness.hpp"
#include "contam/pipeline.hpp"
#include "contam/serialize.hpp"

namespace contam::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> kKeys = {
      "k_percent",   "tau1",         "tau2",
      "dbscan_eps",  "dbscan_min_samples", "tau3",
      "alpha",       "beta",         "gamma",
      "cliff_variants", "cliff_p",   "gaussian_percentile",
      "ngram_n",     "l2_require_gaussian", "tau1_literal",
      "l1_require_ngram", "dbscan_metric", "cliff_two_sided"};
  return kKeys;
}

std::string kebab(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

// Threshold flags shared by detect and eval. Values stay textual until the
// config file has been applied, so flags always win.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path,
                   "Flat key = value file with threshold overrides");
    for (const auto& key : config_keys()) {
      options[key] = app.add_option("--" + kebab(key), values[key],
                                    "Override " + key);
    }
  }

  ThresholdConfig resolve() const {
    ThresholdConfig cfg;
    if (!config_path.empty()) {
      try {
        cfg = parse_config_text(read_text_file(config_path), cfg);
      } catch (const Error& e) {
        throw Error(config_path + ": " + e.what());
      }
    }
    for (const auto& key : config_keys()) {
      if (options.at(key)->count() > 0) {
        set_config_field(cfg, key, values.at(key));
      }
    }
    cfg.validate();
    return cfg;
  }
};

void require_file(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(std::string(what) + " file '" + path + "' does not exist");
  }
}

void require_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw Error("report directory '" + parent.string() + "' does not exist");
  }
}

Json metrics_block(std::span<const Verdict> verdicts,
                   const std::map<std::string, bool>& labels) {
  Json j = to_json(detection_metrics(verdicts, labels));
  Json per_level = Json::object();
  for (int level = 1; level <= 3; ++level) {
    per_level["level" + std::to_string(level)] =
        to_json(level_metrics(verdicts, labels, level));
  }
  j["per_level"] = std::move(per_level);
  return j;
}

std::map<std::string, bool> load_labels(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw Error(path + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_object()) {
    throw Error(path + ": expected {\"labels\": {id: bool}, ...}");
  }
  std::map<std::string, bool> out;
  for (const auto& [id, flag] : j["labels"].items()) {
    if (!flag.is_boolean()) throw Error(path + ": label for '" + id + "' is not a bool");
    out[id] = flag.get<bool>();
  }
  return out;
}

struct DetectArgs {
  std::string synthetic;
  std::string benchmark;
  std::string correctness;
  std::string labels;
  std::string report;
  int jobs = 0;
  ConfigFlags flags;
};

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  require_file(a.synthetic, "synthetic");
  require_file(a.benchmark, "benchmark");
  if (!a.correctness.empty()) require_file(a.correctness, "correctness");
  if (!a.labels.empty()) require_file(a.labels, "labels");
  require_parent(a.report);
  const ThresholdConfig cfg = a.flags.resolve();

  const Dataset syn = load_dataset(a.synthetic, DatasetRole::kSynthetic);
  const Dataset bench = load_dataset(a.benchmark, DatasetRole::kBenchmark);
  std::optional<CorrectnessMatrix> matrix;
  if (!a.correctness.empty()) matrix = load_correctness(a.correctness);

  const AuditRun run =
      run_pipeline(syn, bench, cfg, matrix ? &*matrix : nullptr, a.jobs);
  const CliffReport* cliff = run.cliff ? &*run.cliff : nullptr;
  if (a.labels.empty()) {
    write_report(run.config, run.verdicts, cliff, a.report);
  } else {
    Json report = Json::parse(report_json(run.config, run.verdicts, cliff));
    report["metrics"] = metrics_block(run.verdicts, load_labels(a.labels));
    write_text_file(a.report, dump(report) + "\n");
  }
  const SummaryCounts counts = summarize(run);
  out << "clean " << counts.clean << ", level1 " << counts.level1
      << ", level2 " << counts.level2 << ", level3 " << counts.level3;
  if (run.cliff) out << ", cliff " << (run.cliff->flagged ? "flagged" : "clean");
  out << "\n";
  return contamination_found(run) ? kExitFlagged : kExitClean;
}

struct EvalArgs {
  std::string scenario;
  std::size_t n_syn = 200;
  std::size_t n_bench = 100;
  double rate = 0.2;
  std::uint64_t seed = 0;
  std::string report;
  int jobs = 0;
  ConfigFlags flags;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const ScenarioKind kind = parse_scenario(a.scenario);
  require_parent(a.report);
  const ThresholdConfig cfg = a.flags.resolve();
  const ScenarioBundle bundle =
      generate_scenario(kind, a.n_syn, a.n_bench, a.rate, a.seed);
  const AuditRun run =
      run_pipeline(bundle.synthetic, bundle.benchmark, cfg, nullptr, a.jobs);

  const auto ngram =
      ngram_baseline(bundle.synthetic, bundle.benchmark, cfg.ngram_n);
  const auto embed =
      embedding_baseline(bundle.synthetic, bundle.benchmark, cfg.tau2);
  const auto min_k = min_k_baseline(bundle.synthetic, cfg);

  Json report = Json::parse(report_json(run.config, run.verdicts, nullptr));
  Json scenario = Json::object();
  scenario["kind"] = std::string(scenario_name(kind));
  scenario["n_syn"] = a.n_syn;
  scenario["n_bench"] = a.n_bench;
  scenario["rate"] = a.rate;
  scenario["seed"] = a.seed;
  report["scenario"] = std::move(scenario);
  const Json metrics = metrics_block(run.verdicts, bundle.labels);
  report["metrics"] = metrics;
  Json baselines = Json::object();
  baselines["ngram"] = to_json(detection_metrics(ngram, bundle.labels));
  baselines["embedding"] = to_json(detection_metrics(embed, bundle.labels));
  baselines["min_k"] = to_json(detection_metrics(min_k, bundle.labels));
  report["baselines"] = std::move(baselines);
  Json tests = Json::object();
  tests["vs_ngram"] = to_json(compare_methods(run.verdicts, ngram, bundle.labels));
  tests["vs_embedding"] =
      to_json(compare_methods(run.verdicts, embed, bundle.labels));
  tests["vs_min_k"] = to_json(compare_methods(run.verdicts, min_k, bundle.labels));
  report["mcnemar"] = std::move(tests);
  write_text_file(a.report, dump(report) + "\n");

  out << scenario_name(kind) << ": precision " << metrics["precision"].get<double>()
      << ", recall " << metrics["recall"].get<double>() << ", f1 "
      << metrics["f1"].get<double>() << "\n";
  return kExitClean;
}

struct CliffArgs {
  std::string correctness;
  std::optional<double> p;
  bool two_sided = false;
  std::string report;
};

int cmd_cliff(const CliffArgs& a, std::ostream& out) {
  require_file(a.correctness, "correctness");
  require_parent(a.report);
  ThresholdConfig cfg;
  if (a.p) cfg.cliff_p = *a.p;
  cfg.cliff_two_sided = a.two_sided;
  cfg.validate();
  const CorrectnessMatrix m = load_correctness(a.correctness);
  const CliffReport r = flag_cliff(m, cfg);
  write_report(cfg, {}, &r, a.report);
  out << "delta " << r.delta << ", p " << r.p_value << ", "
      << (r.flagged ? "flagged" : "clean") << "\n";
  return r.flagged ? kExitFlagged : kExitClean;
}

struct GenerateArgs {
  std::string scenario;
  std::size_t n_syn = 200;
  std::size_t n_bench = 100;
  double rate = 0.2;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const ScenarioKind kind = parse_scenario(a.scenario);
  const ScenarioBundle bundle =
      generate_scenario(kind, a.n_syn, a.n_bench, a.rate, a.seed);
  write_bundle(bundle, a.out_dir);
  out << "wrote " << bundle.synthetic.size() << " synthetic and "
      << bundle.benchmark.size() << " benchmark samples to " << a.out_dir
      << "\n";
  return kExitClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multi-level contamination audit for synthetic data", "contam-audit"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* d = app.add_subcommand("detect", "Run the detection cascade on a dataset pair");
  d->add_option("--synthetic", detect.synthetic, "Synthetic JSONL")->required();
  d->add_option("--benchmark", detect.benchmark, "Benchmark JSONL")->required();
  d->add_option("--correctness", detect.correctness, "Correctness matrix JSONL");
  d->add_option("--labels", detect.labels, "Ground-truth labels JSON");
  d->add_option("--report", detect.report, "Output report JSON")->required();
  d->add_option("--jobs", detect.jobs, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  detect.flags.attach(*d);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Generate a scenario and score the cascade on it");
  e->add_option("--scenario", eval.scenario, "S1, S2, S3 or S4")->required();
  e->add_option("--n-syn", eval.n_syn, "Synthetic samples");
  e->add_option("--n-bench", eval.n_bench, "Benchmark samples");
  e->add_option("--rate", eval.rate, "Contamination rate");
  e->add_option("--seed", eval.seed, "Generator seed");
  e->add_option("--report", eval.report, "Output report JSON")->required();
  e->add_option("--jobs", eval.jobs, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  eval.flags.attach(*e);

  CliffArgs cliff;
  auto* c = app.add_subcommand("cliff", "Performance-cliff test on a correctness matrix");
  c->add_option("--correctness", cliff.correctness, "Correctness matrix JSONL")
      ->required();
  c->add_option("--p", cliff.p, "Significance level (default 0.05)");
  c->add_flag("--two-sided", cliff.two_sided, "Two-sided alternative");
  c->add_option("--report", cliff.report, "Output report JSON")->required();

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a scenario bundle to disk");
  g->add_option("--scenario", gen.scenario, "S1, S2, S3 or S4")->required();
  g->add_option("--n-syn", gen.n_syn, "Synthetic samples");
  g->add_option("--n-bench", gen.n_bench, "Benchmark samples");
  g->add_option("--rate", gen.rate, "Contamination rate");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  // CLI11 consumes a vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitClean;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitClean;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }

  try {
    if (d->parsed()) return cmd_detect(detect, out);
    if (e->parsed()) return cmd_eval(eval, out);
    if (c->parsed()) return cmd_cliff(cliff, out);
    return cmd_generate(gen, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

}  // namespace contam::cli
