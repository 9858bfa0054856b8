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

#include "contam/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

namespace contam {

std::string dump(const Json& j) { return j.dump(); }

Json to_json(const ThresholdConfig& cfg) {
  Json j = Json::object();
  j["k_percent"] = cfg.k_percent;
  j["tau1"] = cfg.tau1;
  j["tau2"] = cfg.tau2;
  j["dbscan_eps"] = cfg.dbscan_eps;
  j["dbscan_min_samples"] = cfg.dbscan_min_samples;
  j["tau3"] = cfg.tau3;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["gamma"] = cfg.gamma;
  j["cliff_variants"] = cfg.cliff_variants;
  j["cliff_p"] = cfg.cliff_p;
  j["gaussian_percentile"] = cfg.gaussian_percentile;
  j["ngram_n"] = cfg.ngram_n;
  j["l2_require_gaussian"] = cfg.l2_require_gaussian;
  j["tau1_literal"] = cfg.tau1_literal;
  j["l1_require_ngram"] = cfg.l1_require_ngram;
  j["dbscan_metric"] = std::string(metric_name(cfg.dbscan_metric));
  j["cliff_two_sided"] = cfg.cliff_two_sided;
  return j;
}

Json to_json(const Verdict& v) {
  Json j = Json::object();
  j["sample_id"] = v.sample_id;
  j["flagged_level"] = v.flagged_level;
  if (v.severity) j["severity"] = static_cast<int>(*v.severity);
  if (v.l1_score) j["l1_score"] = *v.l1_score;
  if (v.l1_k_used) j["l1_k_used"] = *v.l1_k_used;
  if (v.l2_sim) j["l2_sim"] = *v.l2_sim;
  if (v.l2_match) j["l2_match"] = *v.l2_match;
  if (v.l2_cluster) j["l2_cluster"] = *v.l2_cluster;
  if (v.l2_mahalanobis) j["l2_mahalanobis"] = *v.l2_mahalanobis;
  if (v.l3_sim) j["l3_sim"] = *v.l3_sim;
  if (v.l3_match) j["l3_match"] = *v.l3_match;
  return j;
}

Json to_json(const CliffReport& r) {
  Json j = Json::object();
  j["acc_orig"] = r.acc_orig;
  j["acc_variants"] = r.acc_variants;
  j["delta"] = r.delta;
  j["t_stat"] = r.t_stat ? Json(*r.t_stat) : Json(nullptr);
  j["df"] = r.df;
  j["p_value"] = r.p_value;
  j["degenerate"] = r.degenerate;
  j["two_sided"] = r.two_sided;
  j["flagged"] = r.flagged;
  return j;
}

Json to_json(const SummaryCounts& s) {
  Json j = Json::object();
  j["clean"] = s.clean;
  j["level1"] = s.level1;
  j["level2"] = s.level2;
  j["level3"] = s.level3;
  return j;
}

Json to_json(const DetectionMetrics& m) {
  Json j = Json::object();
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  j["tn"] = m.tn;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  return j;
}

Json to_json(const McNemarResult& r) {
  Json j = Json::object();
  j["b"] = r.b;
  j["c"] = r.c;
  j["chi2"] = r.chi2;
  j["p"] = r.p;
  return j;
}

Json to_json(const TextSample& s) {
  Json j = Json::object();
  j["id"] = s.id;
  j["text"] = s.text;
  if (s.embedding) j["embedding"] = *s.embedding;
  if (s.token_logprobs) j["token_logprobs"] = *s.token_logprobs;
  if (s.cot_trace) j["cot_trace"] = *s.cot_trace;
  if (!s.tags.empty()) {
    Json tags = Json::object();
    for (const auto& [k, v] : s.tags) tags[k] = v;
    j["tags"] = std::move(tags);
  }
  return j;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw Error("config '" + key + "': expected a number, got '" + value +
                "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error("config '" + key + "': expected an integer, got '" + value +
                "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error("config '" + key + "': expected true/false, got '" + value +
              "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void set_config_field(ThresholdConfig& cfg, const std::string& key,
                      const std::string& value) {
  using Setter = std::function<void(ThresholdConfig&, const std::string&)>;
  auto real = [&key](double ThresholdConfig::*field) -> Setter {
    return [field, key](ThresholdConfig& c, const std::string& v) {
      c.*field = parse_double(key, v);
    };
  };
  auto integer = [&key](int ThresholdConfig::*field) -> Setter {
    return [field, key](ThresholdConfig& c, const std::string& v) {
      c.*field = parse_int(key, v);
    };
  };
  auto boolean = [&key](bool ThresholdConfig::*field) -> Setter {
    return [field, key](ThresholdConfig& c, const std::string& v) {
      c.*field = parse_bool(key, v);
    };
  };
  const std::map<std::string, Setter> setters = {
      {"k_percent", real(&ThresholdConfig::k_percent)},
      {"tau1", real(&ThresholdConfig::tau1)},
      {"tau2", real(&ThresholdConfig::tau2)},
      {"dbscan_eps", real(&ThresholdConfig::dbscan_eps)},
      {"dbscan_min_samples", integer(&ThresholdConfig::dbscan_min_samples)},
      {"tau3", real(&ThresholdConfig::tau3)},
      {"alpha", real(&ThresholdConfig::alpha)},
      {"beta", real(&ThresholdConfig::beta)},
      {"gamma", real(&ThresholdConfig::gamma)},
      {"cliff_variants", integer(&ThresholdConfig::cliff_variants)},
      {"cliff_p", real(&ThresholdConfig::cliff_p)},
      {"gaussian_percentile", real(&ThresholdConfig::gaussian_percentile)},
      {"ngram_n", integer(&ThresholdConfig::ngram_n)},
      {"l2_require_gaussian", boolean(&ThresholdConfig::l2_require_gaussian)},
      {"tau1_literal", boolean(&ThresholdConfig::tau1_literal)},
      {"l1_require_ngram", boolean(&ThresholdConfig::l1_require_ngram)},
      {"dbscan_metric",
       [](ThresholdConfig& c, const std::string& v) {
         c.dbscan_metric = parse_metric(v);
       }},
      {"cliff_two_sided", boolean(&ThresholdConfig::cliff_two_sided)},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw Error("unknown config key '" + key + "'");
  it->second(cfg, value);
}

ThresholdConfig parse_config_text(const std::string& text,
                                  ThresholdConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(line_no) +
                  ": expected 'key = value'");
    }
    try {
      set_config_field(base, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

}  // namespace contam
