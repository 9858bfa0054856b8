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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <string>
#include <vector>

#include "contam/cli.hpp"
#include "contam/harness.hpp"
#include "contam/level1.hpp"
#include "contam/level4.hpp"
#include "contam/pipeline.hpp"
#include "contam/serialize.hpp"
#include "contam/statkit.hpp"

namespace py = pybind11;
using namespace contam;

namespace {

ThresholdConfig config_from(const std::map<std::string, std::string>& fields) {
  ThresholdConfig cfg;
  for (const auto& [key, value] : fields) set_config_field(cfg, key, value);
  cfg.validate();
  return cfg;
}

CorrectnessMatrix matrix_from(const std::vector<bool>& original,
                              const std::vector<std::vector<bool>>& variants) {
  std::vector<std::string> ids;
  ids.reserve(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) ids.push_back("item-" + std::to_string(i));
  return CorrectnessMatrix(std::move(ids), original, variants);
}

// Reports cross the boundary as JSON text; the Python side parses them.
std::string detect(const std::filesystem::path& synthetic,
                   const std::filesystem::path& benchmark,
                   const std::map<std::string, std::string>& config, int jobs) {
  const ThresholdConfig cfg = config_from(config);
  const Dataset syn = load_dataset(synthetic, DatasetRole::kSynthetic);
  const Dataset bench = load_dataset(benchmark, DatasetRole::kBenchmark);
  py::gil_scoped_release release;
  const AuditRun run = run_pipeline(syn, bench, cfg, nullptr, jobs);
  return report_json(run.config, run.verdicts, nullptr);
}

}  // namespace

PYBIND11_MODULE(_contam, m) {
  m.doc() = "Layered contamination audit for synthetic training data.";

  py::register_exception<Error>(m, "ContamError", PyExc_ValueError);

  m.def("mock_embed", [](const std::string& text, std::size_t dim) { return mock_embed(text, dim); },
        py::arg("text"), py::arg("dim") = kMockEmbeddingDim);

  m.def(
      "min_k_score",
      [](const std::vector<double>& logprobs, double k_percent) {
        const MinKScore s = min_k_score(logprobs, k_percent);
        return py::make_tuple(s.value, s.k_used);
      },
      py::arg("logprobs"), py::arg("k_percent") = 20.0,
      "Mean of the lowest k% log-probs; returns (value, count).");

  m.def(
      "ngram_overlap",
      [](const std::string& a, const std::string& b, int n) {
        const NgramOverlap o = ngram_overlap(a, b, n);
        return py::make_tuple(o.ratio, o.matched);
      },
      py::arg("a"), py::arg("b"), py::arg("n") = 13);

  m.def("student_t_sf", &student_t_sf, py::arg("t"), py::arg("df"));
  m.def("chi2_sf_df1", &chi2_sf_df1, py::arg("x"));
  m.def(
      "mcnemar",
      [](std::int64_t b, std::int64_t c) {
        const McNemarResult r = mcnemar(b, c);
        return py::make_tuple(r.chi2, r.p);
      },
      py::arg("b"), py::arg("c"));
  m.def("percentile", [](const std::vector<double>& v, double p) { return percentile(v, p); },
        py::arg("values"), py::arg("p"));

  m.def(
      "flag_cliff",
      [](const std::vector<bool>& original, const std::vector<std::vector<bool>>& variants,
         double p, bool two_sided) {
        ThresholdConfig cfg;
        cfg.cliff_p = p;
        cfg.cliff_two_sided = two_sided;
        cfg.cliff_variants = static_cast<int>(variants.size());
        return dump(to_json(flag_cliff(matrix_from(original, variants), cfg)));
      },
      py::arg("original"), py::arg("variants"), py::arg("p") = 0.05,
      py::arg("two_sided") = false,
      "Accuracy drop under paraphrase. `variants` holds one column per paraphrase.");

  m.def("detect", &detect, py::arg("synthetic"), py::arg("benchmark"),
        py::arg("config") = std::map<std::string, std::string>{}, py::arg("jobs") = 1);

  m.def(
      "generate",
      [](const std::string& kind, const std::filesystem::path& out_dir, std::size_t n_syn,
         std::size_t n_bench, double rate, std::uint64_t seed) {
        write_bundle(generate_scenario(parse_scenario(kind), n_syn, n_bench, rate, seed), out_dir);
      },
      py::arg("kind"), py::arg("out_dir"), py::arg("n_syn") = 200, py::arg("n_bench") = 100,
      py::arg("rate") = 0.2, py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a contam-audit subcommand; returns (exit code, stdout, stderr).");
}
