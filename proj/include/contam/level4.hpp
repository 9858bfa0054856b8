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

#ifndef CONTAM_LEVEL4_HPP_
#define CONTAM_LEVEL4_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contam/core.hpp"

namespace contam {

// Benchmark items x (original, K paraphrase variants) correctness.
class CorrectnessMatrix {
 public:
  CorrectnessMatrix(std::vector<std::string> item_ids,
                    std::vector<bool> original,
                    std::vector<std::vector<bool>> variants);

  std::size_t items() const { return item_ids_.size(); }
  std::size_t variant_count() const { return variants_.size(); }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::vector<bool>& original() const { return original_; }
  // Column k: correctness of every item on paraphrase k.
  const std::vector<bool>& variant(std::size_t k) const {
    return variants_[k];
  }

 private:
  std::vector<std::string> item_ids_;
  std::vector<bool> original_;
  std::vector<std::vector<bool>> variants_;
};

// One JSON object per line: {"id": str, "original": bool, "variants": [bool]}.
CorrectnessMatrix parse_correctness(std::string_view jsonl);
CorrectnessMatrix load_correctness(const std::filesystem::path& path);
std::string correctness_to_jsonl(const CorrectnessMatrix& m);

struct CliffDelta {
  double delta = 0.0;
  double acc_orig = 0.0;
  std::vector<double> acc_variants;
};

CliffDelta delta_cliff(const CorrectnessMatrix& m);

struct PairedTTest {
  std::optional<double> t;  // absent when the differences have zero spread
  int df = 0;
  double p = 1.0;
  bool degenerate = false;
};

// Pairs each item's original correctness with its mean variant correctness.
PairedTTest paired_t_test(const CorrectnessMatrix& m, bool two_sided = false);

struct CliffReport {
  double acc_orig = 0.0;
  std::vector<double> acc_variants;
  double delta = 0.0;
  std::optional<double> t_stat;
  int df = 0;
  double p_value = 1.0;
  bool degenerate = false;
  bool two_sided = false;
  bool flagged = false;
};

CliffReport flag_cliff(const CorrectnessMatrix& m, const ThresholdConfig& cfg);

}  // namespace contam

#endif  // CONTAM_LEVEL4_HPP_
