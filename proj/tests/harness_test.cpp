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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "contam/harness.hpp"
#include "contam/level2.hpp"
#include "contam/pipeline.hpp"
#include "contam/serialize.hpp"

namespace contam {
namespace {

TEST(MockEmbed, DeterministicUnitNorm) {
  for (const char* text : {"a", "ab", "abc", "Hello World", "\xC3\xA9t\xC3\xA9 \xE2\x82\xAC"}) {
    const Vector v = mock_embed(text, 32);
    EXPECT_EQ(v, mock_embed(text, 32));
    EXPECT_EQ(v.size(), 32u);
    EXPECT_NEAR(dot(v, v), 1.0, 1e-12);
  }
  EXPECT_EQ(mock_embed("MiXeD"), mock_embed("mixed"));
  EXPECT_THROW(mock_embed(""), Error);
  EXPECT_THROW(mock_embed("abc", 4), Error);
}

TEST(MockEmbed, StableAcrossBuilds) {
  // Frozen hash output guards against accidental changes to the embedder.
  const Vector v = mock_embed("abc", 8);
  int nonzero = 0;
  for (double x : v) nonzero += x != 0.0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_EQ(std::abs(*std::max_element(v.begin(), v.end(), [](double a, double b) {
              return std::abs(a) < std::abs(b);
            })),
            1.0);
}

TEST(Scenario, S1CopiesAreByteIdentical) {
  const ScenarioBundle b = generate_scenario(ScenarioKind::kS1, 100, 50, 0.2, 7);
  std::set<std::string> bench_texts;
  std::map<std::string, Vector> bench_emb;
  for (const auto& s : b.benchmark.samples()) {
    bench_texts.insert(s.text);
    bench_emb[s.text] = *s.embedding;
  }
  int contaminated = 0;
  for (const auto& s : b.synthetic.samples()) {
    if (!b.labels.at(s.id)) {
      EXPECT_FALSE(bench_texts.count(s.text)) << s.text;
      continue;
    }
    ++contaminated;
    ASSERT_TRUE(bench_texts.count(s.text));
    EXPECT_NEAR(dot(*s.embedding, bench_emb[s.text]), 1.0, 1e-12);
  }
  EXPECT_EQ(contaminated, 20);
}

TEST(Scenario, RateAndLabels) {
  for (auto kind : {ScenarioKind::kS1, ScenarioKind::kS2, ScenarioKind::kS3,
                    ScenarioKind::kS4}) {
    const ScenarioBundle b = generate_scenario(kind, 57, 23, 0.33, 1);
    EXPECT_EQ(b.labels.size(), 57u);
    int pos = 0;
    for (const auto& s : b.synthetic.samples()) pos += b.labels.at(s.id);
    EXPECT_LE(std::abs(pos - 0.33 * 57), 1.0);
    for (const auto& s : b.synthetic.samples()) {
      EXPECT_TRUE(s.embedding);
      EXPECT_TRUE(s.token_logprobs);
      EXPECT_TRUE(s.cot_trace);
    }
  }
  EXPECT_THROW(generate_scenario(ScenarioKind::kS1, 100, 50, 0.0, 1), Error);
  EXPECT_THROW(generate_scenario(ScenarioKind::kS1, 100, 50, 0.004, 1), Error);
  EXPECT_THROW(generate_scenario(ScenarioKind::kS1, 9, 50, 0.5, 1), Error);
  EXPECT_THROW(generate_scenario(ScenarioKind::kS1, 100, 9, 0.5, 1), Error);
  EXPECT_THROW(parse_scenario("S5"), Error);
}

TEST(Scenario, PureFunctionOfArguments) {
  const auto a = generate_scenario(ScenarioKind::kS3, 60, 30, 0.2, 99);
  const auto b = generate_scenario(ScenarioKind::kS3, 60, 30, 0.2, 99);
  EXPECT_EQ(dataset_to_jsonl(a.synthetic), dataset_to_jsonl(b.synthetic));
  EXPECT_EQ(dataset_to_jsonl(a.benchmark), dataset_to_jsonl(b.benchmark));
  EXPECT_EQ(labels_json(a), labels_json(b));
  const auto c = generate_scenario(ScenarioKind::kS3, 60, 30, 0.2, 100);
  EXPECT_NE(dataset_to_jsonl(a.synthetic), dataset_to_jsonl(c.synthetic));
}

TEST(Scenario, BenchmarkIndependentOfSyntheticCount) {
  const auto a = generate_scenario(ScenarioKind::kS2, 40, 30, 0.2, 5);
  const auto b = generate_scenario(ScenarioKind::kS2, 90, 30, 0.2, 5);
  EXPECT_EQ(dataset_to_jsonl(a.benchmark), dataset_to_jsonl(b.benchmark));
}

TEST(Scenario, S3PlantsAreCloseAndLexicallyFresh) {
  const ScenarioBundle b = generate_scenario(ScenarioKind::kS3, 200, 100, 0.2, 0);
  std::vector<Vector> bench;
  for (const auto& s : b.benchmark.samples()) bench.push_back(*s.embedding);
  const auto ngram = ngram_baseline(b.synthetic, b.benchmark, 13);
  for (std::size_t i = 0; i < b.synthetic.size(); ++i) {
    const auto& s = b.synthetic[i];
    if (!b.labels.at(s.id)) continue;
    EXPECT_GT(max_benchmark_similarity(*s.embedding, bench).sim, 0.9) << s.id;
    EXPECT_EQ(ngram[i].flagged_level, 0) << s.id;
  }
}

TEST(Scenario, S1TokenOnlyDetectorIsPerfect) {
  const ScenarioBundle b = generate_scenario(ScenarioKind::kS1, 200, 100, 0.2, 0);
  const DetectionMetrics m = detection_metrics(min_k_baseline(b.synthetic, {}), b.labels);
  EXPECT_EQ(m.f1, 1.0);
}

TEST(Scenario, BundleWrittenAndReloaded) {
  const ScenarioBundle b = generate_scenario(ScenarioKind::kS4, 30, 20, 0.2, 8);
  const auto dir = std::filesystem::temp_directory_path() / "contam_bundle_test";
  write_bundle(b, dir);
  const Dataset syn = load_dataset(dir / "synthetic.jsonl", DatasetRole::kSynthetic);
  EXPECT_EQ(dataset_to_jsonl(syn), dataset_to_jsonl(b.synthetic));
  const Json labels = Json::parse(read_text_file(dir / "labels.json"));
  EXPECT_EQ(labels["kind"], "S4");
  EXPECT_EQ(labels["seed"], 8);
  EXPECT_EQ(labels["labels"].size(), 30u);
  std::filesystem::remove_all(dir);
}

Verdict v(std::string id, int level) {
  Verdict out;
  out.sample_id = std::move(id);
  out.flagged_level = level;
  return out;
}

TEST(Metrics, HandExample) {
  const std::vector<Verdict> vs{v("a", 1), v("b", 1), v("c", 2), v("d", 0),
                                v("e", 0), v("f", 0)};
  const std::map<std::string, bool> labels{{"a", true},  {"b", true},
                                           {"c", false}, {"d", true},
                                           {"e", false}, {"f", false},
                                           {"g", true}};
  // tp 2, fp 1, fn 1; add one more tp to reach the 3/1/1 example.
  std::vector<Verdict> more = vs;
  more.push_back(v("g", 3));
  const DetectionMetrics m = detection_metrics(more, labels);
  EXPECT_EQ(m.tp, 3u);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 1u);
  EXPECT_EQ(m.tn, 2u);
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 0.75);
  EXPECT_DOUBLE_EQ(m.f1, 0.75);
  EXPECT_EQ(m.tp + m.fp + m.fn + m.tn, more.size());
  EXPECT_THROW(detection_metrics(std::vector<Verdict>{v("zz", 0)}, labels), Error);
}

TEST(Metrics, DegenerateAndPerfect) {
  const std::map<std::string, bool> neg{{"a", false}, {"b", false}};
  const DetectionMetrics none =
      detection_metrics(std::vector<Verdict>{v("a", 0), v("b", 0)}, neg);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_EQ(none.tn, 2u);
  const std::map<std::string, bool> mixed{{"a", true}, {"b", false}};
  EXPECT_EQ(detection_metrics(std::vector<Verdict>{v("a", 2), v("b", 0)}, mixed).f1, 1.0);
}

TEST(Metrics, PerLevelRestriction) {
  const std::map<std::string, bool> labels{{"a", true}, {"b", true}, {"c", false}};
  const std::vector<Verdict> vs{v("a", 1), v("b", 3), v("c", 3)};
  const DetectionMetrics l3 = level_metrics(vs, labels, 3);
  EXPECT_EQ(l3.tp, 1u);
  EXPECT_EQ(l3.fp, 1u);
  EXPECT_EQ(l3.fn, 1u);
}

TEST(CompareMethods, Cases) {
  std::map<std::string, bool> labels;
  std::vector<Verdict> a, b;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "x" + std::to_string(i);
    labels[id] = true;
    a.push_back(v(id, i < 15 || i >= 20 ? 1 : 0));
    b.push_back(v(id, i >= 15 ? 1 : 0));
  }
  const McNemarResult r = compare_methods(a, b, labels);
  EXPECT_EQ(r.b, 15);
  EXPECT_EQ(r.c, 5);
  EXPECT_NEAR(r.p, 0.0442, 1e-3);

  const McNemarResult same = compare_methods(a, a, labels);
  EXPECT_EQ(same.b, 0);
  EXPECT_EQ(same.c, 0);
  EXPECT_EQ(same.p, 1.0);

  std::map<std::string, bool> flipped = labels;
  for (auto& [id, l] : flipped) l = !l;
  EXPECT_EQ(compare_methods(a, a, flipped).p, 1.0);

  std::vector<Verdict> shorter(b.begin(), b.end() - 1);
  EXPECT_THROW(compare_methods(a, shorter, labels), Error);
  std::vector<Verdict> renamed = b;
  renamed[0].sample_id = "other";
  EXPECT_THROW(compare_methods(a, renamed, labels), Error);
}

}  // namespace
}  // namespace contam
