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

#ifndef CONTAM_LEVEL2_HPP_
#define CONTAM_LEVEL2_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "contam/core.hpp"

namespace contam {

double dot(std::span<const double> a, std::span<const double> b);
double cosine_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a,
                          std::span<const double> b);

struct SimilarityMatch {
  double sim = -1.0;
  std::size_t index = 0;  // earliest benchmark index on ties
};

// Cosine (dot product) against unit-norm benchmark vectors.
SimilarityMatch max_benchmark_similarity(std::span<const double> s,
                                         std::span<const Vector> benchmark);

struct ClusterAssignment {
  std::vector<int> labels;  // -1 = noise, else consecutive ids from 0
  std::vector<bool> core_flags;

  std::size_t cluster_count() const;
};

inline constexpr int kNoise = -1;

// Density clustering with the neighborhood counting the point itself. Cluster
// ids follow first appearance in input order; a border point joins the
// cluster of its lowest-index core neighbor. `jobs` only parallelizes the
// neighbor search, the result does not depend on it.
ClusterAssignment dbscan(std::span<const Vector> points, double eps,
                         int min_samples,
                         DistanceMetric metric = DistanceMetric::kCosine,
                         int jobs = 1);

inline constexpr double kGaussianRidge = 1e-6;
inline constexpr int kGaussianMaxDim = 10;

// Gaussian fitted to PCA-reduced benchmark embeddings.
struct GaussianModel {
  std::vector<Vector> projection;  // d' orthonormal rows of length d
  Vector mean;                     // mean in projected coordinates
  std::vector<Vector> covariance;  // d' x d', ridge on the diagonal
  std::vector<Vector> precision;   // inverse of covariance
  double cutoff = 0.0;
  double percentile = 0.0;

  std::size_t reduced_dim() const { return mean.size(); }
  Vector project(std::span<const double> v) const;
  double mahalanobis(std::span<const double> v) const;
};

GaussianModel fit_gaussian_model(std::span<const Vector> benchmark,
                                 double percentile);

// sqrt((x - mean)^T P (x - mean)) for a precision matrix P.
double mahalanobis_distance(std::span<const double> x,
                            std::span<const double> mean,
                            const std::vector<Vector>& precision);

struct SemanticResult {
  bool flag = false;
  double sim = 0.0;
  std::size_t match_index = 0;
  int cluster = kNoise;
  bool cluster_has_benchmark = false;
  bool match_co_clustered = false;  // nearest benchmark item shares the cluster
  std::optional<double> mahalanobis;
};

// Precomputed state for level-2 decisions: joint clustering over
// benchmark ++ synthetic embeddings (benchmark rows first) and the benchmark
// Gaussian.
class SemanticIndex {
 public:
  SemanticIndex(std::vector<Vector> benchmark, std::vector<Vector> synthetic,
                const ThresholdConfig& cfg, int jobs = 1);

  const ClusterAssignment& clusters() const { return clusters_; }
  const std::optional<GaussianModel>& gaussian() const { return gaussian_; }
  const std::vector<Vector>& benchmark() const { return benchmark_; }
  std::size_t benchmark_size() const { return benchmark_.size(); }

  // `synthetic_row` indexes the synthetic vectors passed at construction.
  SemanticResult evaluate(std::size_t synthetic_row,
                          const ThresholdConfig& cfg) const;

 private:
  std::vector<Vector> benchmark_;
  std::vector<Vector> synthetic_;
  ClusterAssignment clusters_;
  std::vector<bool> cluster_has_benchmark_;
  std::optional<GaussianModel> gaussian_;
};

// Stand-alone form of the level-2 conjunction. `joint` must label
// benchmark ++ synthetic in that order; `synthetic_row` locates s within the
// synthetic part. `gaussian` may be null only when l2_require_gaussian is off.
SemanticResult flag_semantic_level(std::span<const double> s,
                                   std::size_t synthetic_row,
                                   std::span<const Vector> benchmark,
                                   const ThresholdConfig& cfg,
                                   const ClusterAssignment& joint,
                                   const GaussianModel* gaussian);

}  // namespace contam

#endif  // CONTAM_LEVEL2_HPP_
