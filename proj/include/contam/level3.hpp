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

#ifndef CONTAM_LEVEL3_HPP_
#define CONTAM_LEVEL3_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "contam/core.hpp"

namespace contam {

struct ReasoningStep {
  std::string raw;
  std::vector<std::string> tokens;
  std::set<std::pair<std::string, std::string>> bigrams;
  std::set<std::string> connectives;
  std::set<std::string> args;  // numbers, single-letter identifiers, operators
};

enum class StepSplitRule { kStepMarker, kNumberedList, kNewline, kSentence };

struct ReasoningTrace {
  std::vector<ReasoningStep> steps;
  StepSplitRule rule = StepSplitRule::kSentence;

  std::set<std::string> all_args() const;
};

// therefore, thus, so, hence, because, since, then, implies
const std::vector<std::string>& connective_lexicon();

ReasoningTrace parse_trace(std::string_view cot);

struct ReasoningSimilarity {
  double struct_sim = 0.0;
  double step_sim = 0.0;
  double arg_sim = 0.0;
  double combined = 0.0;
};

struct ReasoningWeights {
  double alpha = 0.4;
  double beta = 0.3;
  double gamma = 0.3;
};

// |A n B| / |A u B|, with two empty sets counting as identical.
template <typename T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t shared = 0;
  for (const auto& x : a) shared += b.count(x);
  return static_cast<double>(shared) /
         static_cast<double>(a.size() + b.size() - shared);
}

// (index bucket, length bucket, connective) triples; "" marks a step with no
// connective.
using StructureSignature = std::set<std::tuple<int, int, std::string>>;

StructureSignature structure_signature(const ReasoningTrace& trace);
int length_bucket(std::size_t token_count);

double struct_similarity(const ReasoningTrace& a, const ReasoningTrace& b);
double step_similarity(const ReasoningTrace& a, const ReasoningTrace& b);
double arg_similarity(const ReasoningTrace& a, const ReasoningTrace& b);

ReasoningSimilarity combine(double struct_sim, double step_sim, double arg_sim,
                            const ReasoningWeights& w);

ReasoningSimilarity reasoning_similarity(const ReasoningTrace& a,
                                         const ReasoningTrace& b,
                                         const ReasoningWeights& w);

// Trace with its signature and argument set cached for repeated comparison.
struct PreparedTrace {
  ReasoningTrace trace;
  StructureSignature signature;
  std::set<std::string> args;

  explicit PreparedTrace(ReasoningTrace t);
};

ReasoningSimilarity reasoning_similarity(const PreparedTrace& a,
                                         const PreparedTrace& b,
                                         const ReasoningWeights& w);

struct ReasoningMatch {
  bool flag = false;
  double best_sim = 0.0;
  std::size_t best_index = 0;  // index into the candidate list
};

// Best match against pre-parsed benchmark traces; nullopt when there are none.
std::optional<ReasoningMatch> flag_reasoning_level(
    const PreparedTrace& trace, std::span<const PreparedTrace> benchmark,
    const ThresholdConfig& cfg);

}  // namespace contam

#endif  // CONTAM_LEVEL3_HPP_
