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

#ifndef CONTAM_TESTS_FIXTURES_HPP_
#define CONTAM_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "contam/level4.hpp"

namespace fixtures {

// 200 items, 164 answered correctly in original form (0.82) and 128 on each
// of five paraphrase columns (0.64). Columns are rotations of one pattern so
// per-item variant accuracy varies.
inline contam::CorrectnessMatrix cliff_matrix() {
  constexpr int kItems = 200;
  std::vector<std::string> ids;
  std::vector<bool> original;
  for (int i = 0; i < kItems; ++i) {
    ids.push_back("item-" + std::to_string(i));
    original.push_back(i < 164);
  }
  std::vector<std::vector<bool>> cols(5, std::vector<bool>(kItems));
  for (int k = 0; k < 5; ++k) {
    for (int i = 0; i < kItems; ++i) cols[k][i] = (i + 37 * k) % kItems < 128;
  }
  return {ids, original, cols};
}

// Reference statistics for cliff_matrix(), frozen from scipy.stats.
inline constexpr double kCliffT = 6.1297166797027876;
inline constexpr double kCliffP = 2.322572750406134e-09;

inline contam::CorrectnessMatrix equal_matrix() {
  std::vector<std::string> ids;
  std::vector<bool> original;
  for (int i = 0; i < 200; ++i) {
    ids.push_back("item-" + std::to_string(i));
    original.push_back(i % 3 != 0);
  }
  return {ids, original, std::vector<std::vector<bool>>(5, original)};
}

}  // namespace fixtures

#endif  // CONTAM_TESTS_FIXTURES_HPP_
