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

#include "contam/harness.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "contam/level1.hpp"
#include "contam/level2.hpp"
#include "contam/serialize.hpp"

namespace contam {

namespace {

constexpr std::uint64_t kEmbedSeed = 0x9AE16A3B2F90404FULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_gram(std::string_view gram) {
  std::uint64_t h = 0xCBF29CE484222325ULL ^ kEmbedSeed;
  for (char c : gram) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return mix64(h);
}

// Portable generator: splitmix64 stream with explicit integer and real draws,
// so bundles are identical across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : state_(mix64(mix64(seed ^ 0xD1B54A32D192ED03ULL) + stream) + index) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix64(z);
  }
  // Uniform in [0, n).
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::size_t>(x % bound);
  }
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& items) {
    return items[below(N)];
  }

 private:
  std::uint64_t state_;
};

enum Stream : std::uint64_t {
  kBenchStream = 1,
  kCleanStream = 2,
  kContamStream = 3,
  kSelectStream = 4,
  kAnchorStream = 5,
};

// Entity pools. Clean pools share no token with benchmark text so that mock
// log-probs separate verbatim copies from fresh items.
struct Pools {
  std::array<const char*, 20> names;
  std::array<const char*, 10> objects;
  std::array<const char*, 8> places;
  int lo;  // number range for operands
  int hi;
};

const Pools kBenchPools = {
    {"Alice", "Bob", "Carol", "David", "Emma", "Frank", "Grace", "Henry",
     "Irene", "Jack", "Karen", "Liam", "Mona", "Nathan", "Olivia", "Peter",
     "Quinn", "Rachel", "Sam", "Tina"},
    {"apples", "pencils", "marbles", "cookies", "stickers", "shells", "oranges",
     "cards", "balloons", "candles"},
    {"market", "school", "park", "library", "bakery", "garden", "museum",
     "harbor"},
    2,
    49};

const Pools kCleanPools = {
    {"Uma", "Victor", "Wendy", "Xavier", "Yara", "Zane", "Amir", "Bella",
     "Chen", "Dara", "Elif", "Farid", "Gita", "Hugo", "Ines", "Jonas", "Kira",
     "Luca", "Maya", "Nico"},
    {"lemons", "crayons", "buttons", "muffins", "stamps", "ribbons", "peaches",
     "tokens", "kites", "pebbles"},
    {"station", "stadium", "zoo", "cafe", "farm", "beach", "plaza", "gallery"},
    51,
    98};

constexpr int kTemplates = 8;

struct Problem {
  int tmpl = 0;
  std::string name;
  std::string name2;
  std::string obj;
  std::string place;
  int a = 0;
  int b = 0;
  int c = 0;
  int answer = 0;
};

// Operands for a template; products and quotients stay inside the pool's
// token range so clean and benchmark numerals never collide.
void draw_numbers(Problem& p, Rng& rng, const Pools& pools) {
  const int lo = pools.lo;
  const int hi = pools.hi;
  switch (p.tmpl) {
    case 1:  // take away
      p.a = rng.between(lo + 1, hi);
      p.b = rng.between(lo, p.a - 1);
      p.answer = p.a - p.b;
      break;
    case 3: {  // equal shares, a = q * b
      p.b = rng.between(2, 7);
      const int qlo = (lo + p.b - 1) / p.b;
      const int qhi = hi / p.b;
      p.answer = rng.between(qlo, qhi);
      p.a = p.answer * p.b;
      if (pools.lo > 2) p.b += 50;  // keep clean numerals out of 2..49
      if (pools.lo > 2) p.a = p.answer * p.b;
      break;
    }
    case 7:
      p.a = rng.between(lo + 1, hi);
      p.b = rng.between(lo, p.a - 1);
      p.c = rng.between(lo, hi);
      p.answer = p.a - p.b + p.c;
      break;
    case 2:
    case 5:
    case 6:
      p.a = rng.between(lo, hi);
      p.b = rng.between(lo, hi);
      p.answer = p.a * p.b;
      break;
    default:
      p.a = rng.between(lo, hi);
      p.b = rng.between(lo, hi);
      p.answer = p.a + p.b;
      break;
  }
}

Problem draw_problem(Rng& rng, const Pools& pools) {
  Problem p;
  p.tmpl = static_cast<int>(rng.below(kTemplates));
  p.name = rng.pick(pools.names);
  do {
    p.name2 = rng.pick(pools.names);
  } while (p.name2 == p.name);
  p.obj = rng.pick(pools.objects);
  p.place = rng.pick(pools.places);
  draw_numbers(p, rng, pools);
  return p;
}

std::string fill(std::string_view pattern, const Problem& p) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '{') {
      out += pattern[i];
      continue;
    }
    const std::size_t close = pattern.find('}', i);
    const std::string_view key = pattern.substr(i + 1, close - i - 1);
    if (key == "name") out += p.name;
    else if (key == "name2") out += p.name2;
    else if (key == "obj") out += p.obj;
    else if (key == "place") out += p.place;
    else if (key == "a") out += std::to_string(p.a);
    else if (key == "b") out += std::to_string(p.b);
    else if (key == "c") out += std::to_string(p.c);
    else if (key == "r") out += std::to_string(p.answer);
    i = close;
  }
  return out;
}

// No template carries 13 consecutive fixed tokens, so fresh text never shares
// a 13-gram with a benchmark question.
constexpr std::array<const char*, kTemplates> kQuestions = {
    "{name} has {a} {obj} and buys {b} more at the {place}. How many {obj} "
    "does {name} have now?",
    "{name} had {a} {obj} but gave {b} of them to {name2} near the {place}. "
    "How many {obj} are left?",
    "A box at the {place} holds {a} {obj}. {name} fills {b} boxes. How many "
    "{obj} are there in total?",
    "{name} shares {a} {obj} equally among {b} friends at the {place}. How "
    "many {obj} does each friend get?",
    "{name} walks {a} km on Monday and {b} km on Tuesday around the {place}. "
    "What distance did {name} cover?",
    "Tickets for the {place} cost {a} dollars each. {name} buys {b} tickets. "
    "How much does {name} pay?",
    "{name} reads {a} pages about {obj} each day for {b} days. How many "
    "pages has {name} read?",
    "There are {a} {obj} in the {place}. {name} removes {b} and then adds "
    "{c}. How many {obj} remain?",
};

// Benchmark-style solutions: explicit step markers and connectives.
constexpr std::array<const char*, kTemplates> kStepTraces = {
    "Step 1: Let x be the number of {obj} that {name} has at the start, so "
    "x = {a}. Step 2: {name} then buys {b} more {obj} at the {place}, hence "
    "we add them to x. Step 3: Therefore the new total is x + {b} = {r} "
    "{obj}.",
    "Step 1: Let x be the {obj} that {name} had before visiting the "
    "{place}, so x = {a}. Step 2: {name} gives {b} of the {obj} to {name2}, "
    "hence we subtract them from x. Step 3: Therefore the remaining amount "
    "is x - {b} = {r} {obj}.",
    "Step 1: Let x be the number of {obj} in one box at the {place}, so x = "
    "{a}. Step 2: {name} fills {b} boxes of the same size, hence we "
    "multiply x by the boxes. Step 3: Therefore the total is x * {b} = {r} "
    "{obj}.",
    "Step 1: Let x be the {obj} that {name} shares at the {place}, so x = "
    "{a}. Step 2: There are {b} friends who each get the same share, hence "
    "we divide x by the friends. Step 3: Therefore each friend gets x / {b} "
    "= {r} {obj}.",
    "Step 1: Let x be the distance that {name} walks on Monday around the "
    "{place}, so x = {a}. Step 2: {name} then walks {b} km more on Tuesday, "
    "hence we add both days to x. Step 3: Therefore the distance is x + {b} "
    "= {r} km.",
    "Step 1: Let x be the price of one ticket for the {place}, so x = {a}. "
    "Step 2: {name} then buys {b} tickets at that same price, hence we "
    "multiply x by the tickets. Step 3: Therefore {name} pays x * {b} = {r} "
    "dollars.",
    "Step 1: Let x be the pages about {obj} that {name} reads each day, so "
    "x = {a}. Step 2: {name} keeps reading for {b} days in a row, hence we "
    "multiply x by the days. Step 3: Therefore {name} reads x * {b} = {r} "
    "pages.",
    "Step 1: Let x be the number of {obj} in the {place} at first, so x = "
    "{a}. Step 2: {name} removes {b} and then adds {c} of the {obj}, hence "
    "we update x twice. Step 3: Therefore what remains is x - {b} + {c} = "
    "{r} {obj}.",
};

// Free-prose solutions used by every non-benchmark-derived item.
constexpr std::array<const char*, kTemplates> kProseTraces = {
    "Combining {a} with {b} gives {a} + {b} = {r}. The answer is {r}.",
    "Taking {b} away from {a} leaves {a} - {b} = {r}. The answer is {r}.",
    "Multiplying {a} by {b} gives {a} * {b} = {r}. The answer is {r}.",
    "Splitting {a} into {b} equal parts gives {a} / {b} = {r}. The answer is "
    "{r}.",
    "Combining {a} with {b} gives {a} + {b} = {r}. The answer is {r}.",
    "Multiplying {a} by {b} gives {a} * {b} = {r}. The answer is {r}.",
    "Multiplying {a} by {b} gives {a} * {b} = {r}. The answer is {r}.",
    "Removing {b} from {a} and adding {c} gives {a} - {b} + {c} = {r}. The "
    "answer is {r}.",
};

// Word-level synonym table for rule-based paraphrase.
const std::vector<std::pair<std::string, std::string>>& synonyms() {
  static const std::vector<std::pair<std::string, std::string>> kTable = {
      {"How many", "What number of"},
      {"How much", "What amount"},
      {"has", "owns"},
      {"had", "owned"},
      {"buys", "purchases"},
      {"gave", "handed"},
      {"holds", "contains"},
      {"fills", "packs"},
      {"shares", "splits"},
      {"walks", "hikes"},
      {"reads", "studies"},
      {"removes", "takes out"},
      {"adds", "puts in"},
      {"each", "every"},
      {"near", "close to"},
      {"around", "across"},
      {"remain", "are left"},
      {"cover", "travel"},
  };
  return kTable;
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string apply_synonyms(const std::string& text) {
  std::string out = text;
  for (const auto& [from, to] : synonyms()) {
    std::string next;
    std::size_t pos = 0;
    while (true) {
      const std::size_t hit = out.find(from, pos);
      if (hit == std::string::npos) {
        next += out.substr(pos);
        break;
      }
      const bool left_ok = hit == 0 || !word_char(out[hit - 1]);
      const std::size_t after = hit + from.size();
      const bool right_ok = after >= out.size() || !word_char(out[after]);
      next += out.substr(pos, hit - pos);
      next += (left_ok && right_ok) ? to : from;
      pos = after;
    }
    out = std::move(next);
  }
  return out;
}

// Moves the closing question to the front of the item.
std::string reorder_clauses(const std::string& text) {
  const std::size_t q = text.rfind(". ");
  if (q == std::string::npos) return text;
  std::string question = text.substr(q + 2);
  std::string body = text.substr(0, q + 1);
  if (!question.empty() && question.back() == '?') question.pop_back();
  return question + ", given that: " + body;
}

std::vector<double> mock_logprobs(
    const std::string& text, const std::unordered_set<std::string>& seen) {
  std::vector<double> out;
  for (const auto& tok : tokenize_words(text)) {
    out.push_back(seen.count(tok) ? kMockSeenLogprob : kMockUnseenLogprob);
  }
  return out;
}

std::string make_id(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 5) digits.insert(0, 5 - digits.size(), '0');
  return std::string(prefix) + digits;
}

Vector plant_embedding(const std::vector<Vector>& bench, std::size_t anchor,
                       Rng& rng) {
  std::size_t partner = rng.below(bench.size() - 1);
  if (partner >= anchor) ++partner;
  const double w = 0.8 + 0.15 * rng.uniform();
  const std::size_t dim = bench[anchor].size();
  Vector v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    v[k] = w * bench[anchor][k] + (1.0 - w) * bench[partner][k] +
           kPlantNoiseSigma * rng.normal();
  }
  return normalize_embedding(v);
}

}  // namespace

Vector mock_embed(std::string_view text, std::size_t dim) {
  if (text.empty()) throw Error("mock_embed: empty text");
  if (dim < 8) throw Error("mock_embed: dimension must be >= 8");
  std::string lower(text);
  for (char& c : lower) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  Vector v(dim, 0.0);
  auto add = [&](std::string_view gram) {
    const std::uint64_t h = hash_gram(gram);
    v[(h >> 1) % dim] += (h & 1) ? -1.0 : 1.0;
  };
  if (lower.size() < 3) {
    add(lower);
  } else {
    for (std::size_t i = 0; i + 3 <= lower.size(); ++i) {
      add(std::string_view(lower).substr(i, 3));
    }
  }
  return normalize_embedding(v);
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kS1: return "S1";
    case ScenarioKind::kS2: return "S2";
    case ScenarioKind::kS3: return "S3";
    case ScenarioKind::kS4: return "S4";
  }
  return "S1";
}

ScenarioKind parse_scenario(std::string_view name) {
  if (name == "S1") return ScenarioKind::kS1;
  if (name == "S2") return ScenarioKind::kS2;
  if (name == "S3") return ScenarioKind::kS3;
  if (name == "S4") return ScenarioKind::kS4;
  throw Error("unknown scenario '" + std::string(name) +
              "' (expected S1, S2, S3 or S4)");
}

ScenarioBundle generate_scenario(ScenarioKind kind, std::size_t n_syn,
                                 std::size_t n_bench, double rate,
                                 std::uint64_t seed, std::size_t embed_dim) {
  if (n_syn < 10 || n_bench < 10) {
    throw Error("generate_scenario: n_syn and n_bench must be >= 10");
  }
  if (!(rate > 0.0 && rate < 1.0)) {
    throw Error("generate_scenario: rate must be in (0, 1)");
  }
  const auto n_contam =
      static_cast<std::size_t>(std::llround(rate * static_cast<double>(n_syn)));
  if (n_contam == 0) {
    throw Error("generate_scenario: rate yields no contaminated samples");
  }

  std::vector<Problem> bench_problems;
  std::vector<TextSample> bench_samples;
  std::unordered_set<std::string> seen_tokens;
  for (std::size_t j = 0; j < n_bench; ++j) {
    Rng rng(seed, kBenchStream, j);
    Problem p = draw_problem(rng, kBenchPools);
    TextSample s;
    s.id = make_id("bench-", j);
    s.text = fill(kQuestions[p.tmpl], p);
    s.cot_trace = fill(kStepTraces[p.tmpl], p);
    s.embedding = mock_embed(s.text, embed_dim);
    for (auto& tok : tokenize_words(s.text)) seen_tokens.insert(std::move(tok));
    bench_problems.push_back(std::move(p));
    bench_samples.push_back(std::move(s));
  }
  std::vector<Vector> bench_vectors;
  for (const auto& s : bench_samples) bench_vectors.push_back(*s.embedding);

  // Which synthetic positions carry contamination.
  std::vector<std::size_t> order(n_syn);
  std::iota(order.begin(), order.end(), 0);
  Rng select(seed, kSelectStream, 0);
  for (std::size_t i = n_syn - 1; i > 0; --i) {
    std::swap(order[i], order[select.below(i + 1)]);
  }
  std::vector<bool> contaminated(n_syn, false);
  for (std::size_t k = 0; k < n_contam; ++k) contaminated[order[k]] = true;

  // S3 groups contaminated items around a few benchmark anchors so they form
  // a dense concept cluster.
  const std::size_t groups = std::max<std::size_t>(1, n_contam / 5);
  std::vector<std::size_t> anchors;
  {
    std::vector<std::size_t> pool(n_bench);
    std::iota(pool.begin(), pool.end(), 0);
    Rng rng(seed, kAnchorStream, 0);
    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t pick = g + rng.below(n_bench - g);
      std::swap(pool[g], pool[pick]);
      anchors.push_back(pool[g % n_bench]);
    }
  }

  ScenarioBundle bundle;
  bundle.kind = kind;
  bundle.seed = seed;
  std::vector<TextSample> syn_samples;
  std::size_t contam_rank = 0;
  for (std::size_t i = 0; i < n_syn; ++i) {
    TextSample s;
    s.id = make_id("syn-", i);
    if (!contaminated[i]) {
      Rng rng(seed, kCleanStream, i);
      const Problem p = draw_problem(rng, kCleanPools);
      s.text = fill(kQuestions[p.tmpl], p);
      s.cot_trace = fill(kProseTraces[p.tmpl], p);
      s.embedding = mock_embed(s.text, embed_dim);
    } else {
      Rng rng(seed, kContamStream, i);
      const std::size_t src = rng.below(n_bench);
      const Problem& bp = bench_problems[src];
      switch (kind) {
        case ScenarioKind::kS1:
          s.text = bench_samples[src].text;
          s.cot_trace = bench_samples[src].cot_trace;
          s.embedding = bench_samples[src].embedding;
          break;
        case ScenarioKind::kS2:
          s.text = reorder_clauses(apply_synonyms(bench_samples[src].text));
          s.cot_trace = fill(kProseTraces[bp.tmpl], bp);
          s.embedding = mock_embed(s.text, embed_dim);
          break;
        case ScenarioKind::kS3: {
          const Problem p = draw_problem(rng, kCleanPools);
          s.text = fill(kQuestions[p.tmpl], p);
          s.cot_trace = fill(kProseTraces[p.tmpl], p);
          const std::size_t anchor = anchors[contam_rank % groups];
          s.embedding = plant_embedding(bench_vectors, anchor, rng);
          break;
        }
        case ScenarioKind::kS4: {
          const Problem fresh = draw_problem(rng, kCleanPools);
          s.text = fill(kQuestions[fresh.tmpl], fresh);
          s.embedding = mock_embed(s.text, embed_dim);
          // Same skeleton and entities as the source, new operands.
          Problem clone = bp;
          draw_numbers(clone, rng, kCleanPools);
          s.cot_trace = fill(kStepTraces[clone.tmpl], clone);
          break;
        }
      }
      ++contam_rank;
    }
    s.token_logprobs = mock_logprobs(s.text, seen_tokens);
    bundle.labels[s.id] = contaminated[i];
    syn_samples.push_back(std::move(s));
  }
  bundle.synthetic = Dataset(DatasetRole::kSynthetic, std::move(syn_samples));
  bundle.benchmark = Dataset(DatasetRole::kBenchmark, std::move(bench_samples));
  return bundle;
}

std::string labels_json(const ScenarioBundle& bundle) {
  Json j = Json::object();
  Json labels = Json::object();
  for (const auto& [id, flag] : bundle.labels) labels[id] = flag;
  j["labels"] = std::move(labels);
  j["kind"] = std::string(scenario_name(bundle.kind));
  j["seed"] = bundle.seed;
  Json mock = Json::object();
  mock["seen_logprob"] = kMockSeenLogprob;
  mock["unseen_logprob"] = kMockUnseenLogprob;
  mock["embedding"] = "char-3-gram feature hashing";
  if (bundle.kind == ScenarioKind::kS3) {
    mock["s3_plant"] =
        "proxy: convex combination of two benchmark embeddings plus N(0, "
        "0.02^2) noise, renormalized; text is fresh";
  }
  j["metadata"] = std::move(mock);
  return dump(j) + "\n";
}

void write_bundle(const ScenarioBundle& bundle,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
  write_dataset(bundle.synthetic, dir / "synthetic.jsonl");
  write_dataset(bundle.benchmark, dir / "benchmark.jsonl");
  write_text_file(dir / "labels.json", labels_json(bundle));
}

namespace {

DetectionMetrics finish(DetectionMetrics m) {
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0
                    : static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

bool label_of(const std::map<std::string, bool>& labels,
              const std::string& id) {
  const auto it = labels.find(id);
  if (it == labels.end()) throw Error("no ground-truth label for '" + id + "'");
  return it->second;
}

}  // namespace

DetectionMetrics detection_metrics(std::span<const Verdict> verdicts,
                                   const std::map<std::string, bool>& labels) {
  DetectionMetrics m;
  for (const auto& v : verdicts) {
    const bool truth = label_of(labels, v.sample_id);
    const bool predicted = v.flagged_level > 0;
    if (predicted && truth) ++m.tp;
    else if (predicted) ++m.fp;
    else if (truth) ++m.fn;
    else ++m.tn;
  }
  return finish(m);
}

DetectionMetrics level_metrics(std::span<const Verdict> verdicts,
                               const std::map<std::string, bool>& labels,
                               int level) {
  std::vector<Verdict> only(verdicts.begin(), verdicts.end());
  for (auto& v : only) {
    if (v.flagged_level != level) v.flagged_level = 0;
  }
  return detection_metrics(only, labels);
}

McNemarResult compare_methods(std::span<const Verdict> a,
                              std::span<const Verdict> b,
                              const std::map<std::string, bool>& labels) {
  std::map<std::string, bool> b_pred;
  for (const auto& v : b) b_pred[v.sample_id] = v.flagged_level > 0;
  if (b_pred.size() != b.size() || a.size() != b.size()) {
    throw Error("compare_methods: verdict id sets differ");
  }
  std::int64_t only_a = 0;
  std::int64_t only_b = 0;
  std::set<std::string> seen;
  for (const auto& v : a) {
    const auto it = b_pred.find(v.sample_id);
    if (it == b_pred.end() || !seen.insert(v.sample_id).second) {
      throw Error("compare_methods: verdict id sets differ");
    }
    const bool truth = label_of(labels, v.sample_id);
    const bool a_ok = (v.flagged_level > 0) == truth;
    const bool b_ok = it->second == truth;
    if (a_ok && !b_ok) ++only_a;
    if (!a_ok && b_ok) ++only_b;
  }
  return mcnemar(only_a, only_b);
}

std::vector<Verdict> ngram_baseline(const Dataset& synthetic,
                                    const Dataset& benchmark, int n) {
  std::vector<std::vector<std::string>> bench_tokens;
  for (const auto& s : benchmark.samples()) {
    bench_tokens.push_back(tokenize_words(s.text));
  }
  std::vector<Verdict> out;
  for (const auto& s : synthetic.samples()) {
    Verdict v;
    v.sample_id = s.id;
    const auto tokens = tokenize_words(s.text);
    if (!tokens.empty()) {
      for (const auto& bt : bench_tokens) {
        if (!bt.empty() && ngram_overlap(tokens, bt, n).matched) {
          v.flagged_level = 1;
          v.severity = Severity::kToken;
          break;
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Verdict> embedding_baseline(const Dataset& synthetic,
                                        const Dataset& benchmark,
                                        double tau2) {
  std::vector<Vector> bench;
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < benchmark.size(); ++j) {
    if (benchmark[j].embedding) {
      bench.push_back(*benchmark[j].embedding);
      rows.push_back(j);
    }
  }
  std::vector<Verdict> out;
  for (const auto& s : synthetic.samples()) {
    Verdict v;
    v.sample_id = s.id;
    if (s.embedding && !bench.empty()) {
      const auto m = max_benchmark_similarity(*s.embedding, bench);
      v.l2_sim = m.sim;
      v.l2_match = benchmark[rows[m.index]].id;
      if (m.sim > tau2) {
        v.flagged_level = 2;
        v.severity = Severity::kSemantic;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Verdict> min_k_baseline(const Dataset& synthetic,
                                    const ThresholdConfig& cfg) {
  cfg.validate();
  std::vector<Verdict> out;
  for (const auto& s : synthetic.samples()) {
    Verdict v;
    v.sample_id = s.id;
    if (s.token_logprobs && !s.token_logprobs->empty()) {
      const auto score = min_k_score(*s.token_logprobs, cfg.k_percent);
      v.l1_score = score.value;
      v.l1_k_used = score.k_used;
      if (flag_token_level(score, cfg.tau1, cfg.tau1_literal)) {
        v.flagged_level = 1;
        v.severity = Severity::kToken;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace contam
