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

#ifndef CONTAM_LEVEL1_HPP_
#define CONTAM_LEVEL1_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contam/core.hpp"

namespace contam {

// Mean of the lowest K% token log-probabilities and how many were averaged.
struct MinKScore {
  double value = 0.0;
  int k_used = 0;
};

// Number of tokens averaged for n tokens at k_percent: max(1, ceil(k*n/100)).
int min_k_count(std::size_t n, double k_percent);

MinKScore min_k_score(std::span<const double> logprobs, double k_percent);

// Default convention: flag when the bottom-K mean negative log-prob is at most
// tau1 (boundary inclusive). With `literal`, flag when value > tau1.
bool flag_token_level(const MinKScore& score, double tau1,
                      bool literal = false);

// Lowercase (ASCII), split on Unicode whitespace, strip surrounding ASCII
// punctuation, drop empty tokens.
std::vector<std::string> tokenize_words(std::string_view text);

struct NgramOverlap {
  double ratio = 0.0;  // shared distinct n-grams / distinct n-grams of `a`
  bool matched = false;
};

NgramOverlap ngram_overlap(std::string_view a, std::string_view b, int n);
NgramOverlap ngram_overlap(const std::vector<std::string>& a_tokens,
                           const std::vector<std::string>& b_tokens, int n);

}  // namespace contam

#endif  // CONTAM_LEVEL1_HPP_
