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

#ifndef CONTAM_STATKIT_HPP_
#define CONTAM_STATKIT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "contam/core.hpp"

namespace contam {

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Upper tail P(T > t) of Student's t with df degrees of freedom.
double student_t_sf(double t, int df);

// Upper tail of chi-square with one degree of freedom.
double chi2_sf_df1(double x);

struct McNemarResult {
  std::int64_t b = 0;  // A correct, B wrong
  std::int64_t c = 0;  // A wrong, B correct
  double chi2 = 0.0;
  double p = 1.0;
};

// Continuity-corrected; the |b - c| - 1 numerator is clamped at zero.
McNemarResult mcnemar(std::int64_t b, std::int64_t c);

// Linear interpolation between closest ranks, h = (n - 1) * p / 100.
double percentile(std::span<const double> values, double p);

inline constexpr int kPowerIterationCap = 200;
inline constexpr double kPowerIterationTol = 1e-10;

struct PrincipalComponents {
  std::vector<Vector> basis;  // orthonormal, leading component first
  std::vector<double> eigenvalues;
};

// Top-k eigenvectors of the sample covariance (divisor n - 1) by power
// iteration with deflation. Each vector stops when the Rayleigh quotient's
// relative change drops below kPowerIterationTol; reaching max_iter is only
// an error when the residual ||Cv - lv|| still exceeds 1e-2 ||C||, since
// near-degenerate eigenvalues legitimately stall the vector itself.
PrincipalComponents principal_components(std::span<const Vector> points, int k,
                                         int max_iter = kPowerIterationCap);

}  // namespace contam

#endif  // CONTAM_STATKIT_HPP_
