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

#include "contam/level1.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "contam/core.hpp"

namespace contam {

int min_k_count(std::size_t n, double k_percent) {
  if (n == 0) return 0;
  // Integer-valued K gives an exact product; the slack absorbs rounding in
  // fractional K so that e.g. 12.5% of 8 stays 1.
  const double raw = k_percent * static_cast<double>(n) / 100.0;
  auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  return static_cast<int>(k);
}

MinKScore min_k_score(std::span<const double> logprobs, double k_percent) {
  if (logprobs.empty()) throw Error("min_k_score: empty log-prob sequence");
  if (!(k_percent > 0.0 && k_percent <= 100.0)) {
    throw Error("min_k_score: k_percent must be in (0, 100]");
  }
  for (double lp : logprobs) {
    if (std::isnan(lp) || lp > 0.0) {
      throw Error("min_k_score: log-probs must be <= 0");
    }
  }
  const int k = min_k_count(logprobs.size(), k_percent);
  std::vector<double> sorted(logprobs.begin(), logprobs.end());
  std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end());
  // Ascending summation keeps the result independent of input order.
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += sorted[i];
  return {sum / static_cast<double>(k), k};
}

bool flag_token_level(const MinKScore& score, double tau1, bool literal) {
  if (literal) return score.value > tau1;
  return -score.value <= tau1;
}

namespace {

// Decodes one UTF-8 code point at s[i], advancing i. Invalid bytes decode as
// themselves so tokenization never fails on malformed input.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto c0 = static_cast<unsigned char>(s[i]);
  int len = 1;
  char32_t cp = c0;
  if (c0 >= 0xF0 && c0 < 0xF8) {
    len = 4;
    cp = c0 & 0x07;
  } else if (c0 >= 0xE0) {
    len = 3;
    cp = c0 & 0x0F;
  } else if (c0 >= 0xC0) {
    len = 2;
    cp = c0 & 0x1F;
  }
  if (len > 1) {
    if (i + len > s.size()) {
      ++i;
      return c0;
    }
    for (int k = 1; k < len; ++k) {
      const auto ck = static_cast<unsigned char>(s[i + k]);
      if ((ck & 0xC0) != 0x80) {
        ++i;
        return c0;
      }
      cp = (cp << 6) | (ck & 0x3F);
    }
  }
  i += len;
  return cp;
}

bool is_unicode_space(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 ||
         cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

std::string strip_punct(std::string_view w) {
  std::size_t b = 0;
  std::size_t e = w.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(w[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(w[e - 1]))) --e;
  std::string out(w.substr(b, e - b));
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) {
      std::string t = strip_punct(text.substr(start, end - start));
      if (!t.empty()) tokens.push_back(std::move(t));
    }
  };
  while (i < text.size()) {
    const std::size_t at = i;
    if (is_unicode_space(next_code_point(text, i))) {
      flush(at);
      start = i;
    }
  }
  flush(text.size());
  return tokens;
}

NgramOverlap ngram_overlap(const std::vector<std::string>& a,
                           const std::vector<std::string>& b, int n) {
  if (n < 1) throw Error("ngram_overlap: n must be >= 1");
  if (a.empty() || b.empty()) throw Error("ngram_overlap: empty text");
  const auto un = static_cast<std::size_t>(n);
  if (a.size() < un || b.size() < un) {
    const bool equal = a == b;
    return {equal ? 1.0 : 0.0, equal};
  }
  using Gram = std::vector<std::string_view>;
  auto grams = [un](const std::vector<std::string>& toks) {
    std::set<Gram> out;
    for (std::size_t i = 0; i + un <= toks.size(); ++i) {
      out.emplace(toks.begin() + static_cast<std::ptrdiff_t>(i),
                  toks.begin() + static_cast<std::ptrdiff_t>(i + un));
    }
    return out;
  };
  const auto ga = grams(a);
  const auto gb = grams(b);
  std::size_t shared = 0;
  for (const auto& g : ga) shared += gb.count(g);
  const double ratio =
      static_cast<double>(shared) / static_cast<double>(ga.size());
  return {ratio, shared > 0};
}

NgramOverlap ngram_overlap(std::string_view a, std::string_view b, int n) {
  return ngram_overlap(tokenize_words(a), tokenize_words(b), n);
}

}  // namespace contam
