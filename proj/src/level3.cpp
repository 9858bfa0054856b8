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

#include "contam/level3.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

namespace contam {

const std::vector<std::string>& connective_lexicon() {
  static const std::vector<std::string> kLexicon = {
      "therefore", "thus", "so",   "hence",
      "because",   "since", "then", "implies"};
  return kLexicon;
}

std::set<std::string> ReasoningTrace::all_args() const {
  std::set<std::string> out;
  for (const auto& s : steps) out.insert(s.args.begin(), s.args.end());
  return out;
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

ReasoningStep analyze_step(std::string_view raw) {
  static const std::vector<std::string_view> kMultiOps = {
      "<=", ">=", "!=", "==", "×", "÷", "≤", "≥",
      "−"};
  static const std::string_view kSingleOps = "+-*/=<>^%";
  static const std::set<std::string> kLexicon(connective_lexicon().begin(),
                                              connective_lexicon().end());

  ReasoningStep step;
  step.raw = std::string(raw);
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < raw.size() && is_digit(raw[j])) ++j;
      if (j + 1 < raw.size() && raw[j] == '.' && is_digit(raw[j + 1])) {
        ++j;
        while (j < raw.size() && is_digit(raw[j])) ++j;
      }
      std::string num(raw.substr(i, j - i));
      step.args.insert(num);
      step.tokens.push_back(std::move(num));
      i = j;
      continue;
    }
    if (is_alpha(c)) {
      std::size_t j = i;
      while (j < raw.size() &&
             (is_alpha(raw[j]) || is_digit(raw[j]) || raw[j] == '\'')) {
        ++j;
      }
      std::string word(raw.substr(i, j - i));
      while (!word.empty() && word.back() == '\'') word.pop_back();
      for (char& ch : word) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      }
      // Single letters other than the usual words read as identifiers.
      if (word.size() == 1 && word != "a" && word != "i") step.args.insert(word);
      if (kLexicon.count(word)) step.connectives.insert(word);
      step.tokens.push_back(std::move(word));
      i = j;
      continue;
    }
    bool matched = false;
    for (std::string_view op : kMultiOps) {
      if (raw.substr(i, op.size()) == op) {
        step.args.insert(op == "−" ? std::string("-") : std::string(op));
        i += op.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kSingleOps.find(c) != std::string_view::npos) {
      step.args.insert(std::string(1, c));
    }
    ++i;
  }
  for (std::size_t k = 0; k + 1 < step.tokens.size(); ++k) {
    step.bigrams.emplace(step.tokens[k], step.tokens[k + 1]);
  }
  return step;
}

struct Cut {
  std::size_t begin;  // start of the marker
  std::size_t end;    // first byte of the step content
};

std::vector<std::string_view> split_at(std::string_view text,
                                       const std::vector<Cut>& cuts) {
  std::vector<std::string_view> parts;
  const auto pre = trim(text.substr(0, cuts.front().begin));
  if (!pre.empty()) parts.push_back(pre);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const std::size_t stop =
        k + 1 < cuts.size() ? cuts[k + 1].begin : text.size();
    parts.push_back(trim(text.substr(cuts[k].end, stop - cuts[k].end)));
  }
  return parts;
}

std::vector<Cut> step_marker_cuts(const std::string& text) {
  static const std::regex kMarker(R"(\bstep\s*\d+\s*[:.])",
                                  std::regex::icase);
  std::vector<Cut> cuts;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kMarker);
       it != std::sregex_iterator(); ++it) {
    const auto pos = static_cast<std::size_t>(it->position());
    cuts.push_back({pos, pos + static_cast<std::size_t>(it->length())});
  }
  return cuts;
}

// "1. ... 2. ..." where the list must open the text and numbers count up by
// one, so decimals or stray "5." inside a step do not split it.
std::vector<Cut> numbered_list_cuts(const std::string& text) {
  static const std::regex kItem(R"((^|\s)(\d+)[.)](?=\s|$))");
  std::vector<Cut> cuts;
  long expected = -1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kItem);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const long number = std::stol(m.str(2));
    const auto begin = static_cast<std::size_t>(m.position(2));
    if (cuts.empty()) {
      if (begin != 0) return {};
    } else if (number != expected) {
      continue;
    }
    cuts.push_back({begin, begin + static_cast<std::size_t>(m.length(2)) + 1});
    expected = number + 1;
  }
  return cuts;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    if (!line.empty()) out.push_back(line);
    pos = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == text.size() ||
         std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      const auto s = trim(text.substr(start, i + 1 - start));
      if (!s.empty()) out.push_back(s);
      start = i + 1;
    }
  }
  const auto tail = trim(text.substr(start));
  if (!tail.empty()) out.push_back(tail);
  return out;
}

}  // namespace

ReasoningTrace parse_trace(std::string_view cot) {
  const std::string_view body = trim(cot);
  if (body.empty()) throw Error("parse_trace: empty reasoning trace");
  const std::string text(body);

  ReasoningTrace trace;
  std::vector<std::string_view> parts;
  if (auto cuts = step_marker_cuts(text); !cuts.empty()) {
    trace.rule = StepSplitRule::kStepMarker;
    parts = split_at(text, cuts);
  } else if (auto list = numbered_list_cuts(text); !list.empty()) {
    trace.rule = StepSplitRule::kNumberedList;
    parts = split_at(text, list);
  } else if (auto lines = split_lines(text); lines.size() > 1) {
    trace.rule = StepSplitRule::kNewline;
    parts = std::move(lines);
  } else {
    trace.rule = StepSplitRule::kSentence;
    parts = split_sentences(text);
  }
  // `parts` views into `text`; copy each before it goes out of scope.
  for (std::string_view p : parts) {
    if (!p.empty()) trace.steps.push_back(analyze_step(p));
  }
  if (trace.steps.empty()) trace.steps.push_back(analyze_step(body));
  return trace;
}

int length_bucket(std::size_t token_count) {
  if (token_count <= 5) return 0;
  if (token_count <= 12) return 1;
  return 2;
}

StructureSignature structure_signature(const ReasoningTrace& trace) {
  StructureSignature sig;
  const std::size_t len = trace.steps.size();
  const std::size_t third = (len + 2) / 3;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& step = trace.steps[i];
    const int index_bucket = static_cast<int>(i / third);
    const int lb = length_bucket(step.tokens.size());
    if (step.connectives.empty()) {
      sig.emplace(index_bucket, lb, "");
    } else {
      for (const auto& c : step.connectives) sig.emplace(index_bucket, lb, c);
    }
  }
  return sig;
}

double struct_similarity(const ReasoningTrace& a, const ReasoningTrace& b) {
  return jaccard(structure_signature(a), structure_signature(b));
}

double step_similarity(const ReasoningTrace& a, const ReasoningTrace& b) {
  const bool a_short = a.steps.size() <= b.steps.size();
  const auto& shorter = a_short ? a : b;
  const auto& longer = a_short ? b : a;
  const std::size_t ns = shorter.steps.size();
  const std::size_t nl = longer.steps.size();
  if (ns == 0) return nl == 0 ? 1.0 : 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    total += jaccard(shorter.steps[i].bigrams, longer.steps[i * nl / ns].bigrams);
  }
  return total / static_cast<double>(ns);
}

double arg_similarity(const ReasoningTrace& a, const ReasoningTrace& b) {
  return jaccard(a.all_args(), b.all_args());
}

ReasoningSimilarity combine(double struct_sim, double step_sim, double arg_sim,
                            const ReasoningWeights& w) {
  if (w.alpha < 0.0 || w.beta < 0.0 || w.gamma < 0.0 ||
      std::abs(w.alpha + w.beta + w.gamma - 1.0) > 1e-9) {
    throw Error("reasoning weights must be >= 0 and sum to 1");
  }
  return {struct_sim, step_sim, arg_sim,
          w.alpha * struct_sim + w.beta * step_sim + w.gamma * arg_sim};
}

ReasoningSimilarity reasoning_similarity(const ReasoningTrace& a,
                                         const ReasoningTrace& b,
                                         const ReasoningWeights& w) {
  return combine(struct_similarity(a, b), step_similarity(a, b),
                 arg_similarity(a, b), w);
}

PreparedTrace::PreparedTrace(ReasoningTrace t)
    : trace(std::move(t)),
      signature(structure_signature(trace)),
      args(trace.all_args()) {}

ReasoningSimilarity reasoning_similarity(const PreparedTrace& a,
                                         const PreparedTrace& b,
                                         const ReasoningWeights& w) {
  return combine(jaccard(a.signature, b.signature),
                 step_similarity(a.trace, b.trace), jaccard(a.args, b.args), w);
}

std::optional<ReasoningMatch> flag_reasoning_level(
    const PreparedTrace& trace, std::span<const PreparedTrace> benchmark,
    const ThresholdConfig& cfg) {
  if (benchmark.empty()) return std::nullopt;
  const ReasoningWeights w{cfg.alpha, cfg.beta, cfg.gamma};
  ReasoningMatch best;
  for (std::size_t j = 0; j < benchmark.size(); ++j) {
    const double sim = reasoning_similarity(trace, benchmark[j], w).combined;
    if (j == 0 || sim > best.best_sim) {
      best.best_sim = sim;
      best.best_index = j;
    }
  }
  best.flag = best.best_sim > cfg.tau3;
  return best;
}

}  // namespace contam
