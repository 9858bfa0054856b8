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

#ifndef CONTAM_CORE_HPP_
#define CONTAM_CORE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace contam {

// All recoverable failures (bad input, violated preconditions) surface as
// contam::Error so callers such as the CLI can map them to one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

struct TextSample {
  std::string id;
  std::string text;
  std::optional<Vector> embedding;  // unit L2 norm once loaded
  std::optional<std::vector<double>> token_logprobs;
  std::optional<std::string> cot_trace;
  std::map<std::string, std::string> tags;

  bool operator==(const TextSample&) const = default;
};

enum class DatasetRole { kSynthetic, kBenchmark };

std::string_view role_name(DatasetRole role);
DatasetRole parse_role(std::string_view name);

// Ordered collection of samples. Input order is the canonical processing
// order for everything downstream (clustering, report emission).
class Dataset {
 public:
  Dataset(DatasetRole role, std::vector<TextSample> samples);

  DatasetRole role() const { return role_; }
  const std::vector<TextSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TextSample& operator[](std::size_t i) const { return samples_[i]; }

  // Common embedding dimension, or nullopt when no sample carries one.
  std::optional<std::size_t> embedding_dim() const;

 private:
  DatasetRole role_;
  std::vector<TextSample> samples_;
};

enum class DistanceMetric { kCosine, kEuclidean };

std::string_view metric_name(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view name);

// Detection thresholds. Defaults follow the published hyperparameter table
// where one exists. Call validate() after mutating fields by hand; every
// consumer in this library validates on entry.
struct ThresholdConfig {
  double k_percent = 20.0;
  double tau1 = 3.5;  // bound on mean negative log-prob of the bottom-K set
  double tau2 = 0.75;
  double dbscan_eps = 0.15;
  int dbscan_min_samples = 5;
  double tau3 = 0.6;
  double alpha = 0.4;
  double beta = 0.3;
  double gamma = 0.3;
  int cliff_variants = 5;
  double cliff_p = 0.05;
  double gaussian_percentile = 97.5;
  int ngram_n = 13;
  bool l2_require_gaussian = true;

  // Literal reading of the Min-K% rule: flag when score > tau1.
  bool tau1_literal = false;
  // Additionally require a benchmark n-gram match for a level-1 flag.
  bool l1_require_ngram = false;
  DistanceMetric dbscan_metric = DistanceMetric::kCosine;
  bool cliff_two_sided = false;

  void validate() const;

  bool operator==(const ThresholdConfig&) const = default;
};

// Severity codes, from lexical reuse up to reasoning reuse.
enum class Severity : int {
  kToken = 1,
  kSemantic = 2,
  kConceptCluster = 3,
  kReasoningPattern = 4
};

struct Verdict {
  std::string sample_id;
  int flagged_level = 0;  // 0 = clean, otherwise the cascade level that fired
  std::optional<double> l1_score;
  std::optional<int> l1_k_used;
  std::optional<double> l2_sim;
  std::optional<std::string> l2_match;
  std::optional<int> l2_cluster;
  std::optional<double> l2_mahalanobis;
  std::optional<double> l3_sim;
  std::optional<std::string> l3_match;
  std::optional<Severity> severity;

  bool operator==(const Verdict&) const = default;
};

struct CliffReport;

// Returns v / ||v||_2. Throws on zero, empty or non-finite input.
Vector normalize_embedding(std::span<const double> v);

// Validates one sample against the interchange invariants and normalizes its
// embedding in place.
void validate_sample(TextSample& sample);

Dataset load_dataset(const std::filesystem::path& path, DatasetRole role);
Dataset parse_dataset(std::string_view jsonl, DatasetRole role);

std::string dataset_to_jsonl(const Dataset& dataset);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

struct SummaryCounts {
  std::size_t clean = 0;
  std::size_t level1 = 0;
  std::size_t level2 = 0;
  std::size_t level3 = 0;

  std::size_t total() const { return clean + level1 + level2 + level3; }
  bool operator==(const SummaryCounts&) const = default;
};

SummaryCounts count_levels(std::span<const Verdict> verdicts);

// Serialized report. Verdicts are emitted sorted by sample_id; the output is a
// pure function of the arguments.
std::string report_json(const ThresholdConfig& config,
                        std::span<const Verdict> verdicts,
                        const CliffReport* cliff);

void write_report(const ThresholdConfig& config,
                  std::span<const Verdict> verdicts, const CliffReport* cliff,
                  const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace contam

#endif  // CONTAM_CORE_HPP_
