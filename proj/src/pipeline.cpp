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

#include "contam/pipeline.hpp"

#include <algorithm>
#include <memory>

#include "contam/level1.hpp"
#include "contam/level2.hpp"
#include "contam/level3.hpp"
#include "parallel.hpp"

namespace contam {

namespace {

struct BenchmarkView {
  std::vector<std::vector<std::string>> tokens;  // only for the n-gram conjunct
  std::vector<std::size_t> embedding_rows;       // benchmark index per row
  std::vector<PreparedTrace> traces;
  std::vector<std::size_t> trace_rows;
};

bool ngram_hit(const std::vector<std::string>& tokens,
               const BenchmarkView& bench, int n) {
  if (tokens.empty()) return false;
  return std::any_of(bench.tokens.begin(), bench.tokens.end(),
                     [&](const std::vector<std::string>& b) {
                       return !b.empty() && ngram_overlap(tokens, b, n).matched;
                     });
}

}  // namespace

AuditRun run_pipeline(const Dataset& synthetic, const Dataset& benchmark,
                      const ThresholdConfig& cfg,
                      const CorrectnessMatrix* correctness, int jobs) {
  cfg.validate();
  if (benchmark.empty()) throw Error("run_pipeline: benchmark is empty");
  const auto syn_dim = synthetic.embedding_dim();
  const auto bench_dim = benchmark.embedding_dim();
  if (syn_dim && bench_dim && *syn_dim != *bench_dim) {
    throw Error("run_pipeline: synthetic embeddings have dimension " +
                std::to_string(*syn_dim) + ", benchmark " +
                std::to_string(*bench_dim));
  }

  BenchmarkView bench;
  std::vector<Vector> bench_vectors;
  for (std::size_t j = 0; j < benchmark.size(); ++j) {
    const auto& s = benchmark[j];
    if (cfg.l1_require_ngram) bench.tokens.push_back(tokenize_words(s.text));
    if (s.embedding) {
      bench.embedding_rows.push_back(j);
      bench_vectors.push_back(*s.embedding);
    }
    if (s.cot_trace) {
      try {
        bench.traces.emplace_back(parse_trace(*s.cot_trace));
        bench.trace_rows.push_back(j);
      } catch (const Error&) {
        // Blank traces count as absent.
      }
    }
  }

  // Synthetic row per sample in the joint clustering, or npos.
  constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);
  std::vector<std::size_t> syn_row(synthetic.size(), kNoRow);
  std::vector<Vector> syn_vectors;
  for (std::size_t i = 0; i < synthetic.size(); ++i) {
    if (synthetic[i].embedding) {
      syn_row[i] = syn_vectors.size();
      syn_vectors.push_back(*synthetic[i].embedding);
    }
  }
  std::unique_ptr<SemanticIndex> semantic;
  if (!bench_vectors.empty() && !syn_vectors.empty()) {
    semantic = std::make_unique<SemanticIndex>(
        std::move(bench_vectors), std::move(syn_vectors), cfg, jobs);
  }

  AuditRun run;
  run.config = cfg;
  run.verdicts.resize(synthetic.size());
  internal::parallel_for(synthetic.size(), jobs, [&](std::size_t i) {
    const TextSample& s = synthetic[i];
    Verdict& v = run.verdicts[i];
    v.sample_id = s.id;

    if (s.token_logprobs && !s.token_logprobs->empty()) {
      const MinKScore score = min_k_score(*s.token_logprobs, cfg.k_percent);
      v.l1_score = score.value;
      v.l1_k_used = score.k_used;
      bool hit = flag_token_level(score, cfg.tau1, cfg.tau1_literal);
      if (hit && cfg.l1_require_ngram) {
        hit = ngram_hit(tokenize_words(s.text), bench, cfg.ngram_n);
      }
      if (hit) {
        v.flagged_level = 1;
        v.severity = Severity::kToken;
        return;
      }
    }

    if (semantic && syn_row[i] != kNoRow) {
      const SemanticResult r = semantic->evaluate(syn_row[i], cfg);
      v.l2_sim = r.sim;
      v.l2_match = benchmark[bench.embedding_rows[r.match_index]].id;
      v.l2_cluster = r.cluster;
      v.l2_mahalanobis = r.mahalanobis;
      if (r.flag) {
        v.flagged_level = 2;
        v.severity = r.match_co_clustered ? Severity::kConceptCluster
                                          : Severity::kSemantic;
        return;
      }
    }

    if (s.cot_trace && !bench.traces.empty()) {
      std::optional<PreparedTrace> trace;
      try {
        trace.emplace(parse_trace(*s.cot_trace));
      } catch (const Error&) {
      }
      if (trace) {
        const auto match = flag_reasoning_level(*trace, bench.traces, cfg);
        v.l3_sim = match->best_sim;
        v.l3_match = benchmark[bench.trace_rows[match->best_index]].id;
        if (match->flag) {
          v.flagged_level = 3;
          v.severity = Severity::kReasoningPattern;
        }
      }
    }
  });

  if (correctness) run.cliff = flag_cliff(*correctness, cfg);
  return run;
}

SummaryCounts summarize(const AuditRun& run) {
  return count_levels(run.verdicts);
}

bool contamination_found(const AuditRun& run) {
  const bool any_sample =
      std::any_of(run.verdicts.begin(), run.verdicts.end(),
                  [](const Verdict& v) { return v.flagged_level > 0; });
  return any_sample || (run.cliff && run.cliff->flagged);
}

}  // namespace contam
