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

#include "contam/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "contam/level4.hpp"
#include "contam/serialize.hpp"

namespace contam {

std::string_view role_name(DatasetRole role) {
  return role == DatasetRole::kSynthetic ? "synthetic" : "benchmark";
}

DatasetRole parse_role(std::string_view name) {
  if (name == "synthetic") return DatasetRole::kSynthetic;
  if (name == "benchmark") return DatasetRole::kBenchmark;
  throw Error("unknown dataset role '" + std::string(name) + "'");
}

std::string_view metric_name(DistanceMetric metric) {
  return metric == DistanceMetric::kCosine ? "cosine" : "euclidean";
}

DistanceMetric parse_metric(std::string_view name) {
  if (name == "cosine") return DistanceMetric::kCosine;
  if (name == "euclidean") return DistanceMetric::kEuclidean;
  throw Error("unknown distance metric '" + std::string(name) + "'");
}

Dataset::Dataset(DatasetRole role, std::vector<TextSample> samples)
    : role_(role), samples_(std::move(samples)) {
  std::unordered_set<std::string> seen;
  std::optional<std::size_t> dim;
  for (auto& s : samples_) {
    validate_sample(s);
    if (!seen.insert(s.id).second) {
      throw Error("duplicate sample id '" + s.id + "'");
    }
    if (s.embedding) {
      if (dim && *dim != s.embedding->size()) {
        throw Error("sample '" + s.id + "': embedding dimension " +
                    std::to_string(s.embedding->size()) + " differs from " +
                    std::to_string(*dim));
      }
      dim = s.embedding->size();
    }
  }
}

std::optional<std::size_t> Dataset::embedding_dim() const {
  for (const auto& s : samples_) {
    if (s.embedding) return s.embedding->size();
  }
  return std::nullopt;
}

void ThresholdConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(std::string("invalid config: ") + what);
  };
  require(std::isfinite(k_percent) && k_percent > 0.0 && k_percent <= 100.0,
          "k_percent must be in (0, 100]");
  require(std::isfinite(tau1), "tau1 must be finite");
  require(tau1 > 0.0 || tau1_literal, "tau1 must be > 0");
  require(tau2 >= -1.0 && tau2 <= 1.0, "tau2 must be in [-1, 1]");
  require(std::isfinite(dbscan_eps) && dbscan_eps > 0.0,
          "dbscan_eps must be > 0");
  require(dbscan_min_samples >= 1, "dbscan_min_samples must be >= 1");
  require(tau3 >= 0.0 && tau3 <= 1.0, "tau3 must be in [0, 1]");
  require(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0,
          "alpha, beta, gamma must be >= 0");
  require(std::abs(alpha + beta + gamma - 1.0) <= 1e-9,
          "alpha + beta + gamma must equal 1");
  require(cliff_variants >= 2, "cliff_variants must be >= 2");
  require(cliff_p > 0.0 && cliff_p < 1.0, "cliff_p must be in (0, 1)");
  require(gaussian_percentile > 0.0 && gaussian_percentile < 100.0,
          "gaussian_percentile must be in (0, 100)");
  require(ngram_n >= 1, "ngram_n must be >= 1");
}

Vector normalize_embedding(std::span<const double> v) {
  if (v.empty()) throw Error("cannot normalize an empty vector");
  double sq = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw Error("vector has non-finite entries");
    sq += x * x;
  }
  // Rescale first so huge or tiny entries do not overflow the squared sum.
  if (!std::isfinite(sq) || sq < 1e-280) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) throw Error("cannot normalize a zero vector");
    Vector scaled(v.begin(), v.end());
    for (double& x : scaled) x /= scale;
    return normalize_embedding(scaled);
  }
  // Unit vectors pass through untouched so reloading a written file is stable.
  if (std::abs(sq - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                static_cast<double>(v.size())) {
    return Vector(v.begin(), v.end());
  }
  const double norm = std::sqrt(sq);
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
  return out;
}

void validate_sample(TextSample& sample) {
  if (sample.id.empty()) throw Error("sample with empty id");
  const std::string who = "sample '" + sample.id + "': ";
  if (sample.text.empty()) throw Error(who + "empty text");
  if (sample.embedding) {
    try {
      sample.embedding = normalize_embedding(*sample.embedding);
    } catch (const Error& e) {
      throw Error(who + "bad embedding: " + e.what());
    }
  }
  if (sample.token_logprobs) {
    for (double lp : *sample.token_logprobs) {
      if (std::isnan(lp) || lp > 0.0) {
        throw Error(who + "token_logprobs must be <= 0");
      }
    }
  }
}

namespace {

TextSample sample_from_json(const Json& j) {
  static const std::set<std::string> kKeys = {
      "id", "text", "embedding", "token_logprobs", "cot_trace", "tags"};
  if (!j.is_object()) throw Error("expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw Error("unknown field '" + key + "'");
  }
  auto get_string = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw Error(std::string("field '") + key + "' must be a string");
    }
    return j.at(key).get<std::string>();
  };
  auto get_numbers = [&](const char* key) -> std::vector<double> {
    const Json& arr = j.at(key);
    if (!arr.is_array()) {
      throw Error(std::string("field '") + key + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& x : arr) {
      if (!x.is_number()) {
        throw Error(std::string("field '") + key + "' must hold numbers");
      }
      out.push_back(x.get<double>());
    }
    return out;
  };

  TextSample s;
  s.id = get_string("id");
  s.text = get_string("text");
  if (j.contains("embedding") && !j.at("embedding").is_null()) {
    s.embedding = get_numbers("embedding");
  }
  if (j.contains("token_logprobs") && !j.at("token_logprobs").is_null()) {
    s.token_logprobs = get_numbers("token_logprobs");
  }
  if (j.contains("cot_trace") && !j.at("cot_trace").is_null()) {
    s.cot_trace = get_string("cot_trace");
  }
  if (j.contains("tags") && !j.at("tags").is_null()) {
    const Json& tags = j.at("tags");
    if (!tags.is_object()) throw Error("field 'tags' must be an object");
    for (const auto& [k, v] : tags.items()) {
      if (!v.is_string()) throw Error("tag '" + k + "' must be a string");
      s.tags.emplace(k, v.get<std::string>());
    }
  }
  return s;
}

}  // namespace

Dataset parse_dataset(std::string_view jsonl, DatasetRole role) {
  std::vector<TextSample> samples;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    TextSample s;
    try {
      s = sample_from_json(Json::parse(line));
      validate_sample(s);
    } catch (const Json::exception& e) {
      throw Error(where + "malformed JSON (" + e.what() + ")");
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    if (!seen.insert(s.id).second) {
      throw Error(where + "duplicate sample id '" + s.id + "'");
    }
    samples.push_back(std::move(s));
  }
  return Dataset(role, std::move(samples));
}

Dataset load_dataset(const std::filesystem::path& path, DatasetRole role) {
  const std::string content = read_text_file(path);
  try {
    return parse_dataset(content, role);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string dataset_to_jsonl(const Dataset& dataset) {
  std::string out;
  for (const auto& s : dataset.samples()) {
    out += dump(to_json(s));
    out += '\n';
  }
  return out;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  write_text_file(path, dataset_to_jsonl(dataset));
}

SummaryCounts count_levels(std::span<const Verdict> verdicts) {
  SummaryCounts c;
  for (const auto& v : verdicts) {
    switch (v.flagged_level) {
      case 0: ++c.clean; break;
      case 1: ++c.level1; break;
      case 2: ++c.level2; break;
      case 3: ++c.level3; break;
      default:
        throw Error("verdict '" + v.sample_id + "' has invalid level " +
                    std::to_string(v.flagged_level));
    }
  }
  return c;
}

std::string report_json(const ThresholdConfig& config,
                        std::span<const Verdict> verdicts,
                        const CliffReport* cliff) {
  std::vector<const Verdict*> sorted;
  sorted.reserve(verdicts.size());
  for (const auto& v : verdicts) sorted.push_back(&v);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Verdict* a, const Verdict* b) {
                     return a->sample_id < b->sample_id;
                   });
  Json report = Json::object();
  report["config"] = to_json(config);
  report["summary"] = to_json(count_levels(verdicts));
  Json list = Json::array();
  for (const Verdict* v : sorted) list.push_back(to_json(*v));
  report["verdicts"] = std::move(list);
  if (cliff) report["cliff"] = to_json(*cliff);
  return dump(report) + "\n";
}

void write_report(const ThresholdConfig& config,
                  std::span<const Verdict> verdicts, const CliffReport* cliff,
                  const std::filesystem::path& path) {
  write_text_file(path, report_json(config, verdicts, cliff));
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace contam
