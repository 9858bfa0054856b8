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

#include <cmath>
#include <filesystem>
#include <random>

#include "contam/core.hpp"
#include "contam/level4.hpp"
#include "contam/serialize.hpp"

namespace contam {
namespace {

TEST(NormalizeEmbedding, AlreadyUnit) {
  const Vector v = normalize_embedding(Vector{0.6, 0.8});
  EXPECT_DOUBLE_EQ(v[0], 0.6);
  EXPECT_DOUBLE_EQ(v[1], 0.8);
}

TEST(NormalizeEmbedding, ThreeFour) {
  const Vector v = normalize_embedding(Vector{3.0, 4.0});
  EXPECT_NEAR(v[0], 0.6, 1e-15);
  EXPECT_NEAR(v[1], 0.8, 1e-15);
}

TEST(NormalizeEmbedding, RejectsDegenerate) {
  EXPECT_THROW(normalize_embedding(Vector{0.0, 0.0}), Error);
  EXPECT_THROW(normalize_embedding(Vector{}), Error);
  EXPECT_THROW(normalize_embedding(Vector{NAN, 1.0}), Error);
}

TEST(NormalizeEmbedding, HugeAndTinyStayUnit) {
  for (double scale : {1e-300, 1e300}) {
    const Vector v = normalize_embedding(Vector{3.0 * scale, 4.0 * scale});
    EXPECT_NEAR(v[0], 0.6, 1e-12);
    EXPECT_NEAR(v[1], 0.8, 1e-12);
  }
}

TEST(ParseDataset, TwoLinesInOrder) {
  const Dataset d = parse_dataset(
      "{\"id\":\"b\",\"text\":\"second\"}\n{\"id\":\"a\",\"text\":\"first\"}\n",
      DatasetRole::kSynthetic);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].id, "b");
  EXPECT_EQ(d[1].id, "a");
  EXPECT_EQ(d.role(), DatasetRole::kSynthetic);
}

TEST(ParseDataset, MalformedLineNamesItsNumber) {
  try {
    parse_dataset(
        "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"b\",\"text\":\"y\"}\n{oops\n",
        DatasetRole::kBenchmark);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(ParseDataset, NormalizesEmbeddingOnLoad) {
  const Dataset d = parse_dataset(
      "{\"id\":\"a\",\"text\":\"x\",\"embedding\":[3,4]}", DatasetRole::kBenchmark);
  EXPECT_NEAR((*d[0].embedding)[0], 0.6, 1e-15);
  EXPECT_NEAR((*d[0].embedding)[1], 0.8, 1e-15);
  EXPECT_EQ(d.embedding_dim(), 2u);
}

TEST(ParseDataset, Rejections) {
  const auto bad = [](const char* jsonl) {
    EXPECT_THROW(parse_dataset(jsonl, DatasetRole::kSynthetic), Error) << jsonl;
  };
  bad("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}");
  bad("{\"id\":\"a\",\"text\":\"\"}");
  bad("{\"id\":\"\",\"text\":\"x\"}");
  bad("{\"id\":\"a\",\"text\":\"x\",\"embedding\":[0,0]}");
  bad("{\"id\":\"a\",\"text\":\"x\",\"token_logprobs\":[-1, 0.5]}");
  bad("{\"id\":\"a\",\"text\":\"x\",\"surprise\":1}");
  bad("{\"id\":\"a\",\"text\":\"x\",\"embedding\":[1,0]}\n"
      "{\"id\":\"b\",\"text\":\"y\",\"embedding\":[1,0,0]}");
  bad("[1,2]");
}

TEST(ParseDataset, BlankLinesSkipped) {
  const Dataset d = parse_dataset("\n{\"id\":\"a\",\"text\":\"x\"}\n\n  \n",
                                  DatasetRole::kSynthetic);
  EXPECT_EQ(d.size(), 1u);
}

TEST(Dataset, RoundTripThroughFile) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<TextSample> samples;
  for (int i = 0; i < 20; ++i) {
    TextSample s;
    s.id = "s" + std::to_string(i);
    s.text = "text \"quoted\" \xC3\xA9 " + std::to_string(i);
    Vector e(7);
    for (double& x : e) x = g(rng);
    s.embedding = normalize_embedding(e);
    if (i % 2) s.token_logprobs = std::vector<double>{-0.1 * i, -2.5, 0.0};
    if (i % 3) s.cot_trace = "Step 1: so x = " + std::to_string(i);
    s.tags["k"] = "v" + std::to_string(i);
    samples.push_back(s);
  }
  const Dataset d(DatasetRole::kBenchmark, samples);
  const auto path = std::filesystem::temp_directory_path() / "contam_rt.jsonl";
  write_dataset(d, path);
  const Dataset back = load_dataset(path, DatasetRole::kBenchmark);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back[i].id, d[i].id);
    EXPECT_EQ(back[i].text, d[i].text);
    EXPECT_EQ(back[i].token_logprobs, d[i].token_logprobs);
    EXPECT_EQ(back[i].cot_trace, d[i].cot_trace);
    EXPECT_EQ(back[i].tags, d[i].tags);
    ASSERT_TRUE(back[i].embedding);
    double norm = 0.0;
    for (std::size_t k = 0; k < 7; ++k) {
      EXPECT_NEAR((*back[i].embedding)[k], (*d[i].embedding)[k], 1e-9);
      norm += (*back[i].embedding)[k] * (*back[i].embedding)[k];
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(ThresholdConfig, DefaultsAndValidation) {
  const ThresholdConfig cfg;
  EXPECT_EQ(cfg.k_percent, 20.0);
  EXPECT_EQ(cfg.tau1, 3.5);
  EXPECT_EQ(cfg.tau2, 0.75);
  EXPECT_EQ(cfg.dbscan_eps, 0.15);
  EXPECT_EQ(cfg.dbscan_min_samples, 5);
  EXPECT_EQ(cfg.alpha, 0.4);
  EXPECT_EQ(cfg.beta, 0.3);
  EXPECT_EQ(cfg.gamma, 0.3);
  EXPECT_EQ(cfg.cliff_variants, 5);
  EXPECT_EQ(cfg.cliff_p, 0.05);
  EXPECT_EQ(cfg.ngram_n, 13);
  EXPECT_NO_THROW(cfg.validate());

  auto broken = [](auto mutate) {
    ThresholdConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), Error);
  };
  broken([](ThresholdConfig& c) { c.k_percent = 0; });
  broken([](ThresholdConfig& c) { c.k_percent = 101; });
  broken([](ThresholdConfig& c) { c.alpha = 0.5; });
  broken([](ThresholdConfig& c) { c.dbscan_eps = 0; });
  broken([](ThresholdConfig& c) { c.dbscan_min_samples = 0; });
  broken([](ThresholdConfig& c) { c.cliff_variants = 1; });
  broken([](ThresholdConfig& c) { c.cliff_p = 1.0; });
  broken([](ThresholdConfig& c) { c.ngram_n = 0; });
  broken([](ThresholdConfig& c) { c.gaussian_percentile = 120; });
}

TEST(ConfigText, ParsesAndRejects) {
  const ThresholdConfig c = parse_config_text(
      "# comment\n tau2 = 0.8 \nk_percent=10\nl2_require_gaussian = false\n"
      "dbscan_metric = euclidean\n");
  EXPECT_EQ(c.tau2, 0.8);
  EXPECT_EQ(c.k_percent, 10.0);
  EXPECT_FALSE(c.l2_require_gaussian);
  EXPECT_EQ(c.dbscan_metric, DistanceMetric::kEuclidean);
  EXPECT_THROW(parse_config_text("bogus = 1\n"), Error);
  EXPECT_THROW(parse_config_text("tau2 = abc\n"), Error);
  EXPECT_THROW(parse_config_text("tau2\n"), Error);
  EXPECT_THROW(parse_config_text("dbscan_min_samples = 2.5\n"), Error);
}

TEST(Summary, CountsLevels) {
  std::vector<Verdict> v(5);
  v[1].flagged_level = 1;
  v[2].flagged_level = 2;
  const SummaryCounts s = count_levels(v);
  EXPECT_EQ(s, (SummaryCounts{3, 1, 1, 0}));
  EXPECT_EQ(count_levels({}), SummaryCounts{});
}

TEST(Report, SortedPureAndOmitsAbsentFields) {
  std::vector<Verdict> v(3);
  v[0].sample_id = "c";
  v[1].sample_id = "a";
  v[1].flagged_level = 1;
  v[1].l1_score = -0.5;
  v[1].l1_k_used = 4;
  v[1].severity = Severity::kToken;
  v[2].sample_id = "b";
  const std::string r1 = report_json(ThresholdConfig{}, v, nullptr);
  std::reverse(v.begin(), v.end());
  const std::string r2 = report_json(ThresholdConfig{}, v, nullptr);
  EXPECT_EQ(r1, r2);
  const Json j = Json::parse(r1);
  ASSERT_EQ(j["verdicts"].size(), 3u);
  EXPECT_EQ(j["verdicts"][0]["sample_id"], "a");
  EXPECT_EQ(j["verdicts"][2]["sample_id"], "c");
  EXPECT_FALSE(j["verdicts"][0].contains("l2_sim"));
  EXPECT_FALSE(j["verdicts"][0].contains("l3_sim"));
  EXPECT_EQ(j["summary"]["level1"], 1);
  EXPECT_FALSE(j.contains("cliff"));
  EXPECT_EQ(j["config"]["tau1"], 3.5);
}

}  // namespace
}  // namespace contam
