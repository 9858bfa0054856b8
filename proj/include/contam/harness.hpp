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

#ifndef CONTAM_HARNESS_HPP_
#define CONTAM_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "contam/core.hpp"
#include "contam/statkit.hpp"

namespace contam {

inline constexpr std::size_t kMockEmbeddingDim = 256;
inline constexpr double kMockSeenLogprob = -0.5;
inline constexpr double kMockUnseenLogprob = -6.0;
inline constexpr double kPlantNoiseSigma = 0.02;

// Hashes character 3-grams of the lowercased text into `dim` signed buckets
// and L2-normalizes.
Vector mock_embed(std::string_view text, std::size_t dim = kMockEmbeddingDim);

enum class ScenarioKind { kS1, kS2, kS3, kS4 };

std::string_view scenario_name(ScenarioKind kind);
ScenarioKind parse_scenario(std::string_view name);

struct ScenarioBundle {
  ScenarioKind kind = ScenarioKind::kS1;
  Dataset synthetic{DatasetRole::kSynthetic, {}};
  Dataset benchmark{DatasetRole::kBenchmark, {}};
  std::map<std::string, bool> labels;  // synthetic id -> contaminated
  std::uint64_t seed = 0;
};

// Planted-contamination scenarios:
//   S1 verbatim benchmark copies, S2 rule-based paraphrases,
//   S3 fresh text with embeddings planted near benchmark anchors,
//   S4 fresh text whose reasoning trace clones a benchmark skeleton.
// A pure function of its arguments.
ScenarioBundle generate_scenario(ScenarioKind kind, std::size_t n_syn,
                                 std::size_t n_bench, double rate,
                                 std::uint64_t seed,
                                 std::size_t embed_dim = kMockEmbeddingDim);

std::string labels_json(const ScenarioBundle& bundle);
void write_bundle(const ScenarioBundle& bundle,
                  const std::filesystem::path& dir);

struct DetectionMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

DetectionMetrics detection_metrics(std::span<const Verdict> verdicts,
                                   const std::map<std::string, bool>& labels);

// Restricted to the samples flagged at exactly `level` (others count as
// negatives).
DetectionMetrics level_metrics(std::span<const Verdict> verdicts,
                               const std::map<std::string, bool>& labels,
                               int level);

McNemarResult compare_methods(std::span<const Verdict> a,
                              std::span<const Verdict> b,
                              const std::map<std::string, bool>& labels);

// Baseline detectors, one verdict per synthetic sample in input order.
std::vector<Verdict> ngram_baseline(const Dataset& synthetic,
                                    const Dataset& benchmark, int n);
std::vector<Verdict> embedding_baseline(const Dataset& synthetic,
                                        const Dataset& benchmark, double tau2);
std::vector<Verdict> min_k_baseline(const Dataset& synthetic,
                                    const ThresholdConfig& cfg);

}  // namespace contam

#endif  // CONTAM_HARNESS_HPP_
