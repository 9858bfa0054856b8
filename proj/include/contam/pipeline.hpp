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

#ifndef CONTAM_PIPELINE_HPP_
#define CONTAM_PIPELINE_HPP_

#include <optional>
#include <vector>

#include "contam/core.hpp"
#include "contam/level4.hpp"

namespace contam {

struct AuditRun {
  ThresholdConfig config;
  std::vector<Verdict> verdicts;  // one per synthetic sample, input order
  std::optional<CliffReport> cliff;
};

// Cascade L1 -> L2 -> L3 per synthetic sample, stopping at the first level
// that fires; levels whose artifacts are missing are skipped. Models for L2
// are fitted once per run. The optional correctness matrix feeds the
// dataset-level cliff check independently of the verdicts. `jobs` <= 0 means
// one worker per hardware thread; the result never depends on it.
AuditRun run_pipeline(const Dataset& synthetic, const Dataset& benchmark,
                      const ThresholdConfig& cfg,
                      const CorrectnessMatrix* correctness = nullptr,
                      int jobs = 1);

SummaryCounts summarize(const AuditRun& run);

bool contamination_found(const AuditRun& run);

}  // namespace contam

#endif  // CONTAM_PIPELINE_HPP_
