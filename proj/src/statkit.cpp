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

#include "contam/statkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace contam {

namespace {

constexpr double kBetaTol = 1e-15;
constexpr int kBetaMaxIter = 1000;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kBetaTol) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw Error("incomplete_beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete_beta: x not in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, int df) {
  if (!std::isfinite(t)) throw Error("student_t_sf: t must be finite");
  if (df < 1) throw Error("student_t_sf: df must be >= 1");
  if (t == 0.0) return 0.5;
  const double nu = static_cast<double>(df);
  // P(|T| > |t|) = I_{nu/(nu+t^2)}(nu/2, 1/2)
  const double tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, nu / (nu + t * t));
  return t > 0.0 ? tail : 1.0 - tail;
}

double chi2_sf_df1(double x) {
  if (std::isnan(x) || x < 0.0) throw Error("chi2_sf_df1: x must be >= 0");
  // 2 * Phi_bar(sqrt(x)) = erfc(sqrt(x / 2))
  return std::erfc(std::sqrt(0.5 * x));
}

McNemarResult mcnemar(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0) throw Error("mcnemar: counts must be >= 0");
  McNemarResult r;
  r.b = b;
  r.c = c;
  if (b + c == 0) return r;
  const double num =
      std::max(0.0, static_cast<double>(std::llabs(b - c)) - 1.0);
  r.chi2 = num * num / static_cast<double>(b + c);
  r.p = chi2_sf_df1(r.chi2);
  return r;
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw Error("percentile: empty input");
  if (!(p >= 0.0 && p <= 100.0)) throw Error("percentile: p not in [0,100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void orthogonalize(Vector& v, const std::vector<Vector>& basis) {
  for (const auto& q : basis) {
    double proj = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) proj += v[i] * q[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
  }
}

Vector mat_vec(const std::vector<Vector>& m, const Vector& v) {
  Vector out(v.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) s += m[r][c] * v[c];
    out[r] = s;
  }
  return out;
}

double inner(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Deterministic start vector orthogonal to `basis`, with a standard-basis
// fallback for the rare case where the pseudo-random draw lies in its span.
Vector start_vector(std::size_t dim, int component,
                    const std::vector<Vector>& basis) {
  std::uint64_t state = 0x5DEECE66DULL + static_cast<std::uint64_t>(component);
  Vector v(dim);
  for (double& x : v) {
    x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
  }
  orthogonalize(v, basis);
  if (norm(v) > 1e-8) {
    const double n = norm(v);
    for (double& x : v) x /= n;
    return v;
  }
  for (std::size_t e = 0; e < dim; ++e) {
    Vector u(dim, 0.0);
    u[e] = 1.0;
    orthogonalize(u, basis);
    orthogonalize(u, basis);
    if (const double n = norm(u); n > 1e-6) {
      for (double& x : u) x /= n;
      return u;
    }
  }
  throw Error("principal_components: no direction left to start from");
}

}  // namespace

PrincipalComponents principal_components(std::span<const Vector> points, int k,
                                         int max_iter) {
  PrincipalComponents out;
  if (k < 0) throw Error("principal_components: k must be >= 0");
  if (points.size() < 2) {
    throw Error("principal_components: need at least 2 points");
  }
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw Error("principal_components: dimension mismatch");
    }
  }
  if (static_cast<std::size_t>(k) > std::min(dim, points.size() - 1)) {
    throw Error("principal_components: k exceeds min(dim, n - 1)");
  }
  if (k == 0) return out;

  Vector mean(dim, 0.0);
  for (const auto& p : points) {
    for (std::size_t i = 0; i < dim; ++i) mean[i] += p[i];
  }
  for (double& m : mean) m /= static_cast<double>(points.size());

  std::vector<Vector> cov(dim, Vector(dim, 0.0));
  Vector centered(dim);
  for (const auto& p : points) {
    for (std::size_t i = 0; i < dim; ++i) centered[i] = p[i] - mean[i];
    for (std::size_t r = 0; r < dim; ++r) {
      const double cr = centered[r];
      if (cr == 0.0) continue;
      for (std::size_t c = r; c < dim; ++c) cov[r][c] += cr * centered[c];
    }
  }
  const double denom = static_cast<double>(points.size() - 1);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = r; c < dim; ++c) {
      cov[r][c] /= denom;
      cov[c][r] = cov[r][c];
    }
  }
  double scale = 0.0;
  for (const auto& row : cov) {
    for (double x : row) scale += x * x;
  }
  scale = std::sqrt(scale);

  // `work` is deflated after each component; `cov` stays intact for the
  // residual check.
  std::vector<Vector> work = cov;
  for (int comp = 0; comp < k; ++comp) {
    Vector v = start_vector(dim, comp, out.basis);
    double lambda = 0.0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      Vector w = mat_vec(work, v);
      orthogonalize(w, out.basis);
      const double nw = norm(w);
      if (nw <= 1e-14 * scale || nw == 0.0) {
        // Remaining spectrum is numerically zero: any orthogonal v works.
        lambda = 0.0;
        converged = true;
        break;
      }
      for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
      lambda = inner(v, mat_vec(work, v));
      if (!std::isnan(prev) &&
          std::abs(lambda - prev) <= kPowerIterationTol * std::abs(lambda)) {
        converged = true;
        break;
      }
      prev = lambda;
    }
    if (!converged) {
      Vector cv = mat_vec(cov, v);
      for (std::size_t i = 0; i < dim; ++i) cv[i] -= lambda * v[i];
      if (norm(cv) > 1e-2 * scale) {
        throw ConvergenceError("principal_components: component " +
                               std::to_string(comp) + " did not converge in " +
                               std::to_string(max_iter) + " iterations");
      }
    }
    // Fix the sign so the largest-magnitude entry is positive.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    if (v[arg] < 0.0) {
      for (double& x : v) x = -x;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) work[r][c] -= lambda * v[r] * v[c];
    }
    out.basis.push_back(std::move(v));
    out.eigenvalues.push_back(lambda);
  }
  return out;
}

}  // namespace contam
