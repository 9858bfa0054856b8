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

#include "contam/level2.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "contam/statkit.hpp"
#include "parallel.hpp"

namespace contam {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - dot(a, b);
}

double euclidean_distance(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

SimilarityMatch max_benchmark_similarity(std::span<const double> s,
                                         std::span<const Vector> benchmark) {
  if (benchmark.empty()) throw Error("max_benchmark_similarity: no benchmark");
  SimilarityMatch best;
  for (std::size_t j = 0; j < benchmark.size(); ++j) {
    const double sim = dot(s, benchmark[j]);
    if (j == 0 || sim > best.sim) best = {sim, j};
  }
  return best;
}

std::size_t ClusterAssignment::cluster_count() const {
  int top = kNoise;
  for (int l : labels) top = std::max(top, l);
  return static_cast<std::size_t>(top + 1);
}

ClusterAssignment dbscan(std::span<const Vector> points, double eps,
                         int min_samples, DistanceMetric metric, int jobs) {
  if (points.empty()) throw Error("dbscan: empty point set");
  if (!(eps > 0.0)) throw Error("dbscan: eps must be > 0");
  if (min_samples < 1) throw Error("dbscan: min_samples must be >= 1");
  const std::size_t n = points.size();
  for (const auto& p : points) {
    if (p.size() != points.front().size()) {
      throw Error("dbscan: dimension mismatch");
    }
  }

  std::vector<std::vector<std::size_t>> neighbors(n);
  internal::parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = metric == DistanceMetric::kCosine
                           ? cosine_distance(points[i], points[j])
                           : euclidean_distance(points[i], points[j]);
      if (d <= eps) neighbors[i].push_back(j);
    }
  });

  ClusterAssignment out;
  out.core_flags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.core_flags[i] =
        neighbors[i].size() >= static_cast<std::size_t>(min_samples);
  }

  // Connected components of the core graph.
  std::vector<int> label(n, kNoise);
  int next = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!out.core_flags[seed] || label[seed] != kNoise) continue;
    std::deque<std::size_t> queue{seed};
    label[seed] = next;
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      for (std::size_t q : neighbors[p]) {
        if (out.core_flags[q] && label[q] == kNoise) {
          label[q] = next;
          queue.push_back(q);
        }
      }
    }
    ++next;
  }
  // Border points follow their lowest-index core neighbor (lists are sorted).
  for (std::size_t i = 0; i < n; ++i) {
    if (out.core_flags[i]) continue;
    for (std::size_t q : neighbors[i]) {
      if (out.core_flags[q]) {
        label[i] = label[q];
        break;
      }
    }
  }
  // Renumber by first appearance over all points.
  std::vector<int> remap(static_cast<std::size_t>(next), kNoise);
  int fresh = 0;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kNoise) {
      out.labels[i] = kNoise;
      continue;
    }
    int& r = remap[static_cast<std::size_t>(label[i])];
    if (r == kNoise) r = fresh++;
    out.labels[i] = r;
  }
  return out;
}

Vector GaussianModel::project(std::span<const double> v) const {
  Vector y(projection.size());
  for (std::size_t k = 0; k < projection.size(); ++k) {
    y[k] = dot(projection[k], v);
  }
  return y;
}

double mahalanobis_distance(std::span<const double> x,
                            std::span<const double> mean,
                            const std::vector<Vector>& precision) {
  if (x.size() != mean.size() || precision.size() != mean.size()) {
    throw Error("mahalanobis_distance: dimension mismatch");
  }
  const std::size_t d = x.size();
  double q = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    const double dr = x[r] - mean[r];
    for (std::size_t c = 0; c < d; ++c) {
      q += dr * precision[r][c] * (x[c] - mean[c]);
    }
  }
  return std::sqrt(std::max(0.0, q));
}

double GaussianModel::mahalanobis(std::span<const double> v) const {
  return mahalanobis_distance(project(v), mean, precision);
}

GaussianModel fit_gaussian_model(std::span<const Vector> benchmark,
                                 double percentile_value) {
  if (benchmark.size() < 2) {
    throw Error("fit_gaussian_model: need at least 2 benchmark embeddings");
  }
  const std::size_t dim = benchmark.front().size();
  const int reduced = static_cast<int>(
      std::min({static_cast<std::size_t>(kGaussianMaxDim),
                benchmark.size() - 1, dim}));

  GaussianModel g;
  g.percentile = percentile_value;
  g.projection = principal_components(benchmark, reduced).basis;

  std::vector<Vector> projected;
  projected.reserve(benchmark.size());
  for (const auto& v : benchmark) projected.push_back(g.project(v));

  const auto dr = static_cast<std::size_t>(reduced);
  const auto n = static_cast<double>(projected.size());
  g.mean.assign(dr, 0.0);
  for (const auto& y : projected) {
    for (std::size_t k = 0; k < dr; ++k) g.mean[k] += y[k];
  }
  for (double& m : g.mean) m /= n;

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(reduced, reduced);
  for (const auto& y : projected) {
    Eigen::VectorXd c(reduced);
    for (std::size_t k = 0; k < dr; ++k) c(k) = y[k] - g.mean[k];
    cov += c * c.transpose();
  }
  cov /= (n - 1.0);
  cov.diagonal().array() += kGaussianRidge;
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error("fit_gaussian_model: covariance is not positive definite");
  }
  const Eigen::MatrixXd prec =
      llt.solve(Eigen::MatrixXd::Identity(reduced, reduced));

  g.covariance.assign(dr, Vector(dr));
  g.precision.assign(dr, Vector(dr));
  for (std::size_t r = 0; r < dr; ++r) {
    for (std::size_t c = 0; c < dr; ++c) {
      g.covariance[r][c] = cov(r, c);
      // Symmetrize away solver round-off.
      g.precision[r][c] = 0.5 * (prec(r, c) + prec(c, r));
    }
  }

  std::vector<double> self;
  self.reserve(projected.size());
  for (const auto& y : projected) {
    self.push_back(mahalanobis_distance(y, g.mean, g.precision));
  }
  g.cutoff = percentile(self, percentile_value);
  return g;
}

namespace {

SemanticResult evaluate_semantic(std::span<const double> s,
                                 std::size_t synthetic_row,
                                 std::span<const Vector> benchmark,
                                 const ThresholdConfig& cfg,
                                 const ClusterAssignment& joint,
                                 const std::vector<bool>* has_benchmark,
                                 const GaussianModel* gaussian) {
  const std::size_t nb = benchmark.size();
  if (nb + synthetic_row >= joint.labels.size()) {
    throw Error("flag_semantic_level: row outside the joint clustering");
  }
  SemanticResult r;
  const auto match = max_benchmark_similarity(s, benchmark);
  r.sim = match.sim;
  r.match_index = match.index;
  r.cluster = joint.labels[nb + synthetic_row];
  if (r.cluster != kNoise) {
    if (has_benchmark) {
      r.cluster_has_benchmark =
          (*has_benchmark)[static_cast<std::size_t>(r.cluster)];
    } else {
      for (std::size_t j = 0; j < nb && !r.cluster_has_benchmark; ++j) {
        r.cluster_has_benchmark = joint.labels[j] == r.cluster;
      }
    }
    r.match_co_clustered = joint.labels[match.index] == r.cluster;
  }
  if (gaussian) r.mahalanobis = gaussian->mahalanobis(s);
  const bool in_distribution =
      !cfg.l2_require_gaussian ||
      (r.mahalanobis && *r.mahalanobis <= gaussian->cutoff);
  r.flag = r.sim > cfg.tau2 && r.cluster != kNoise && r.cluster_has_benchmark &&
           in_distribution;
  return r;
}

}  // namespace

SemanticResult flag_semantic_level(std::span<const double> s,
                                   std::size_t synthetic_row,
                                   std::span<const Vector> benchmark,
                                   const ThresholdConfig& cfg,
                                   const ClusterAssignment& joint,
                                   const GaussianModel* gaussian) {
  cfg.validate();
  if (cfg.l2_require_gaussian && gaussian == nullptr) {
    throw Error("flag_semantic_level: Gaussian model required by config");
  }
  return evaluate_semantic(s, synthetic_row, benchmark, cfg, joint, nullptr,
                           gaussian);
}

SemanticIndex::SemanticIndex(std::vector<Vector> benchmark,
                             std::vector<Vector> synthetic,
                             const ThresholdConfig& cfg, int jobs)
    : benchmark_(std::move(benchmark)), synthetic_(std::move(synthetic)) {
  if (benchmark_.empty()) throw Error("SemanticIndex: no benchmark embeddings");
  std::vector<Vector> joint;
  joint.reserve(benchmark_.size() + synthetic_.size());
  joint.insert(joint.end(), benchmark_.begin(), benchmark_.end());
  joint.insert(joint.end(), synthetic_.begin(), synthetic_.end());
  clusters_ = dbscan(joint, cfg.dbscan_eps, cfg.dbscan_min_samples,
                     cfg.dbscan_metric, jobs);
  cluster_has_benchmark_.assign(clusters_.cluster_count(), false);
  for (std::size_t j = 0; j < benchmark_.size(); ++j) {
    if (clusters_.labels[j] != kNoise) {
      cluster_has_benchmark_[static_cast<std::size_t>(clusters_.labels[j])] =
          true;
    }
  }
  if (benchmark_.size() >= 2) {
    gaussian_ = fit_gaussian_model(benchmark_, cfg.gaussian_percentile);
  }
}

SemanticResult SemanticIndex::evaluate(std::size_t synthetic_row,
                                       const ThresholdConfig& cfg) const {
  if (synthetic_row >= synthetic_.size()) {
    throw Error("SemanticIndex: synthetic row out of range");
  }
  return evaluate_semantic(synthetic_[synthetic_row], synthetic_row,
                           benchmark_, cfg, clusters_, &cluster_has_benchmark_,
                           gaussian_ ? &*gaussian_ : nullptr);
}

}  // namespace contam
