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

#include "contam/harness.hpp"
#include "contam/pipeline.hpp"
#include "fixtures.hpp"

namespace contam {
namespace {

TextSample sample(std::string id, std::string text) {
  TextSample s;
  s.id = std::move(id);
  s.text = std::move(text);
  return s;
}

TEST(Pipeline, TokenFlagShortCircuits) {
  TextSample s = sample("s", "copied text");
  s.token_logprobs = std::vector<double>{-0.1, -0.2, -0.3};
  s.embedding = Vector{1, 0};
  s.cot_trace = "Step 1: so x = 1";
  TextSample b = sample("b", "copied text");
  b.embedding = Vector{1, 0};
  b.cot_trace = "Step 1: so x = 1";
  const Dataset syn(DatasetRole::kSynthetic, {s});
  const Dataset bench(DatasetRole::kBenchmark, {b});
  const AuditRun run = run_pipeline(syn, bench, ThresholdConfig{});
  ASSERT_EQ(run.verdicts.size(), 1u);
  const Verdict& v = run.verdicts[0];
  EXPECT_EQ(v.flagged_level, 1);
  EXPECT_EQ(v.severity, Severity::kToken);
  EXPECT_TRUE(v.l1_score);
  EXPECT_FALSE(v.l2_sim);
  EXPECT_FALSE(v.l2_cluster);
  EXPECT_FALSE(v.l3_sim);
  EXPECT_FALSE(run.cliff);
}

TEST(Pipeline, CleanSampleWithAllArtifacts) {
  TextSample s = sample("s", "fresh text");
  s.token_logprobs = std::vector<double>{-6, -7, -8};
  s.embedding = Vector{1, 0};
  s.cot_trace = "We count. It is nine.";
  TextSample b = sample("b", "benchmark");
  b.embedding = Vector{0, 1};
  b.cot_trace = "Step 1: so x = 1. Step 2: hence 2";
  const AuditRun run = run_pipeline(Dataset(DatasetRole::kSynthetic, {s}),
                                    Dataset(DatasetRole::kBenchmark, {b}),
                                    ThresholdConfig{});
  const Verdict& v = run.verdicts[0];
  EXPECT_EQ(v.flagged_level, 0);
  EXPECT_FALSE(v.severity);
  EXPECT_TRUE(v.l1_score);
  EXPECT_TRUE(v.l2_sim);
  EXPECT_EQ(v.l2_match, "b");
  EXPECT_TRUE(v.l3_sim);
  EXPECT_EQ(v.l3_match, "b");
}

TEST(Pipeline, MissingArtifactsSkipLevels) {
  const AuditRun run = run_pipeline(Dataset(DatasetRole::kSynthetic, {sample("s", "x")}),
                                    Dataset(DatasetRole::kBenchmark, {sample("b", "y")}),
                                    ThresholdConfig{});
  const Verdict& v = run.verdicts[0];
  EXPECT_EQ(v.flagged_level, 0);
  EXPECT_FALSE(v.l1_score);
  EXPECT_FALSE(v.l2_sim);
  EXPECT_FALSE(v.l3_sim);
}

TEST(Pipeline, Rejections) {
  const Dataset syn(DatasetRole::kSynthetic, {sample("s", "x")});
  EXPECT_THROW(run_pipeline(syn, Dataset(DatasetRole::kBenchmark, {}), ThresholdConfig{}),
               Error);
  TextSample a = sample("s", "x");
  a.embedding = Vector{1, 0};
  TextSample b = sample("b", "y");
  b.embedding = Vector{1, 0, 0};
  EXPECT_THROW(run_pipeline(Dataset(DatasetRole::kSynthetic, {a}),
                            Dataset(DatasetRole::kBenchmark, {b}), ThresholdConfig{}),
               Error);
  ThresholdConfig bad;
  bad.alpha = 0.9;
  EXPECT_THROW(run_pipeline(syn, Dataset(DatasetRole::kBenchmark, {b}), bad), Error);
}

TEST(Pipeline, NgramConjunctGatesTokenLevel) {
  TextSample s = sample("s", "completely novel words only");
  s.token_logprobs = std::vector<double>{-0.1, -0.1};
  ThresholdConfig cfg;
  cfg.l1_require_ngram = true;
  const Dataset syn(DatasetRole::kSynthetic, {s});
  const Dataset bench(DatasetRole::kBenchmark, {sample("b", "something else")});
  EXPECT_EQ(run_pipeline(syn, bench, cfg).verdicts[0].flagged_level, 0);
  const Dataset same(DatasetRole::kBenchmark, {sample("b", s.text)});
  EXPECT_EQ(run_pipeline(syn, same, cfg).verdicts[0].flagged_level, 1);
}

TEST(Pipeline, CliffIndependentOfVerdicts) {
  const ScenarioBundle b = generate_scenario(ScenarioKind::kS1, 40, 20, 0.25, 3);
  const CorrectnessMatrix m = fixtures::cliff_matrix();
  const AuditRun without = run_pipeline(b.synthetic, b.benchmark, ThresholdConfig{});
  const AuditRun with = run_pipeline(b.synthetic, b.benchmark, ThresholdConfig{}, &m);
  EXPECT_EQ(without.verdicts, with.verdicts);
  ASSERT_TRUE(with.cliff);
  EXPECT_TRUE(with.cliff->flagged);
  EXPECT_TRUE(contamination_found(with));
}

TEST(Pipeline, JobsDoNotChangeResults) {
  for (auto kind : {ScenarioKind::kS1, ScenarioKind::kS3, ScenarioKind::kS4}) {
    const ScenarioBundle b = generate_scenario(kind, 120, 60, 0.2, 11);
    const AuditRun one = run_pipeline(b.synthetic, b.benchmark, ThresholdConfig{}, nullptr, 1);
    for (int jobs : {2, 3, 8}) {
      const AuditRun many =
          run_pipeline(b.synthetic, b.benchmark, ThresholdConfig{}, nullptr, jobs);
      EXPECT_EQ(one.verdicts, many.verdicts);
      EXPECT_EQ(report_json(one.config, one.verdicts, nullptr),
                report_json(many.config, many.verdicts, nullptr));
    }
  }
}

TEST(Pipeline, SummaryCountsCoverDataset) {
  for (auto kind : {ScenarioKind::kS1, ScenarioKind::kS2, ScenarioKind::kS3,
                    ScenarioKind::kS4}) {
    const ScenarioBundle b = generate_scenario(kind, 80, 40, 0.3, 2);
    const AuditRun run = run_pipeline(b.synthetic, b.benchmark, ThresholdConfig{});
    EXPECT_EQ(summarize(run).total(), b.synthetic.size());
  }
}

int count_at(const AuditRun& run, int level) {
  int n = 0;
  for (const auto& v : run.verdicts) n += v.flagged_level == level;
  return n;
}

TEST(Pipeline, TighterThresholdsNeverFlagMoreAtTheirLevel) {
  const ScenarioBundle s1 = generate_scenario(ScenarioKind::kS1, 100, 50, 0.2, 4);
  const ScenarioBundle s3 = generate_scenario(ScenarioKind::kS3, 100, 50, 0.2, 4);
  const ScenarioBundle s4 = generate_scenario(ScenarioKind::kS4, 100, 50, 0.2, 4);
  int prev = 1 << 30;
  for (double tau1 : {8.0, 3.5, 1.0, 0.4}) {
    ThresholdConfig cfg;
    cfg.tau1 = tau1;
    const int n = count_at(run_pipeline(s1.synthetic, s1.benchmark, cfg), 1);
    EXPECT_LE(n, prev);
    prev = n;
  }
  prev = 1 << 30;
  for (double tau2 : {0.5, 0.75, 0.9, 0.97}) {
    ThresholdConfig cfg;
    cfg.tau2 = tau2;
    const int n = count_at(run_pipeline(s3.synthetic, s3.benchmark, cfg), 2);
    EXPECT_LE(n, prev);
    prev = n;
  }
  prev = 1 << 30;
  for (double tau3 : {0.3, 0.6, 0.7, 0.9}) {
    ThresholdConfig cfg;
    cfg.tau3 = tau3;
    const int n = count_at(run_pipeline(s4.synthetic, s4.benchmark, cfg), 3);
    EXPECT_LE(n, prev);
    prev = n;
  }
}

}  // namespace
}  // namespace contam
