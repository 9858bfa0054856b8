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

#include "contam/level4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "contam/serialize.hpp"
#include "contam/statkit.hpp"

namespace contam {

CorrectnessMatrix::CorrectnessMatrix(std::vector<std::string> item_ids,
                                     std::vector<bool> original,
                                     std::vector<std::vector<bool>> variants)
    : item_ids_(std::move(item_ids)),
      original_(std::move(original)),
      variants_(std::move(variants)) {
  if (item_ids_.empty()) throw Error("correctness matrix has no items");
  if (original_.size() != item_ids_.size()) {
    throw Error("correctness matrix: original column length mismatch");
  }
  if (variants_.size() < 2) {
    throw Error("correctness matrix needs at least 2 variant columns, got " +
                std::to_string(variants_.size()));
  }
  for (const auto& col : variants_) {
    if (col.size() != item_ids_.size()) {
      throw Error("correctness matrix: variant column length mismatch");
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : item_ids_) {
    if (id.empty()) throw Error("correctness matrix: empty item id");
    if (!seen.insert(id).second) {
      throw Error("correctness matrix: duplicate item id '" + id + "'");
    }
  }
}

CorrectnessMatrix parse_correctness(std::string_view jsonl) {
  std::vector<std::string> ids;
  std::vector<bool> original;
  std::vector<std::vector<bool>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(where + "malformed JSON (" + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("original") || !j["original"].is_boolean() ||
        !j.contains("variants") || !j["variants"].is_array()) {
      throw Error(where +
                  "expected {\"id\": str, \"original\": bool, "
                  "\"variants\": [bool]}");
    }
    for (const auto& [key, _] : j.items()) {
      if (key != "id" && key != "original" && key != "variants") {
        throw Error(where + "unknown field '" + key + "'");
      }
    }
    std::vector<bool> row;
    for (const auto& v : j["variants"]) {
      if (!v.is_boolean()) throw Error(where + "variants must be booleans");
      row.push_back(v.get<bool>());
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(where + "expected " + std::to_string(rows.front().size()) +
                  " variants, got " + std::to_string(row.size()));
    }
    ids.push_back(j["id"].get<std::string>());
    original.push_back(j["original"].get<bool>());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("correctness matrix has no items");
  std::vector<std::vector<bool>> columns(rows.front().size(),
                                         std::vector<bool>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) columns[k][i] = rows[i][k];
  }
  return CorrectnessMatrix(std::move(ids), std::move(original),
                           std::move(columns));
}

CorrectnessMatrix load_correctness(const std::filesystem::path& path) {
  try {
    return parse_correctness(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string correctness_to_jsonl(const CorrectnessMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.items(); ++i) {
    Json j = Json::object();
    j["id"] = m.item_ids()[i];
    j["original"] = static_cast<bool>(m.original()[i]);
    Json variants = Json::array();
    for (std::size_t k = 0; k < m.variant_count(); ++k) {
      variants.push_back(static_cast<bool>(m.variant(k)[i]));
    }
    j["variants"] = std::move(variants);
    out += dump(j) + "\n";
  }
  return out;
}

namespace {

std::int64_t count_true(const std::vector<bool>& col) {
  return std::count(col.begin(), col.end(), true);
}

}  // namespace

CliffDelta delta_cliff(const CorrectnessMatrix& m) {
  const auto n = static_cast<double>(m.items());
  const auto k = static_cast<std::int64_t>(m.variant_count());
  CliffDelta out;
  const std::int64_t orig = count_true(m.original());
  std::int64_t variant_total = 0;
  out.acc_orig = static_cast<double>(orig) / n;
  for (std::size_t c = 0; c < m.variant_count(); ++c) {
    const std::int64_t hits = count_true(m.variant(c));
    variant_total += hits;
    out.acc_variants.push_back(static_cast<double>(hits) / n);
  }
  // Exact integer numerator: one rounding step in total.
  out.delta = static_cast<double>(k * orig - variant_total) /
              (static_cast<double>(k) * n);
  return out;
}

PairedTTest paired_t_test(const CorrectnessMatrix& m, bool two_sided) {
  const std::size_t n = m.items();
  if (n < 2) throw Error("paired_t_test: need at least 2 items");
  const auto k = static_cast<double>(m.variant_count());
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    int hits = 0;
    for (std::size_t c = 0; c < m.variant_count(); ++c) hits += m.variant(c)[i];
    d[i] = (m.original()[i] ? 1.0 : 0.0) - hits / k;
  }
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) /
                      static_cast<double>(n);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  PairedTTest out;
  out.df = static_cast<int>(n - 1);
  // Differences are multiples of 1/K, so "all identical" means exactly zero
  // spread up to summation round-off.
  if (sd <= 1e-12) {
    out.degenerate = true;
    const bool positive = mean > 1e-12;
    const bool negative = mean < -1e-12;
    out.p = two_sided ? (positive || negative ? 0.0 : 1.0)
                      : (positive ? 0.0 : 1.0);
    return out;
  }
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  out.t = t;
  out.p = two_sided ? std::min(1.0, 2.0 * student_t_sf(std::abs(t), out.df))
                    : student_t_sf(t, out.df);
  return out;
}

CliffReport flag_cliff(const CorrectnessMatrix& m, const ThresholdConfig& cfg) {
  cfg.validate();
  const CliffDelta delta = delta_cliff(m);
  const PairedTTest test = paired_t_test(m, cfg.cliff_two_sided);
  CliffReport r;
  r.acc_orig = delta.acc_orig;
  r.acc_variants = delta.acc_variants;
  r.delta = delta.delta;
  r.t_stat = test.t;
  r.df = test.df;
  r.p_value = test.p;
  r.degenerate = test.degenerate;
  r.two_sided = cfg.cliff_two_sided;
  r.flagged = r.p_value < cfg.cliff_p && r.delta > 0.0;
  return r;
}

}  // namespace contam
