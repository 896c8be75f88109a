// Copyright 2026 The sicpom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations used by the tests. They share only the Eigen types
// with the library and are written the slow, obvious way.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline double overlap_sq(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

/// F(a, b) = (sum_i sqrt(lambda_i(a b)))^2: a b is similar to
/// sqrt(a) b sqrt(a), so its eigenvalues are real and non-negative.
inline double fidelity(const Mat& a, const Mat& b) {
  Eigen::ComplexEigenSolver<Mat> es(a * b);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i).real();
    if (l > 1e-14) s += std::sqrt(l);
  }
  return s * s;
}

/// Row j of the map vec(rho) -> tr(E_j rho), column index a*d + b for rho_ab.
inline Mat probability_map(const std::vector<Mat>& effects) {
  const Eigen::Index d = effects.front().rows();
  Mat m(static_cast<Eigen::Index>(effects.size()), d * d);
  for (std::size_t j = 0; j < effects.size(); ++j)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) m(static_cast<Eigen::Index>(j), a * d + b) = effects[j](b, a);
  return m;
}

/// Least-squares solution of probability_map * vec(rho) = p via SVD.
inline Mat invert_probabilities(const std::vector<Mat>& effects, const std::vector<double>& p) {
  const Eigen::Index d = effects.front().rows();
  const Mat m = probability_map(effects);
  Vec rhs(static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = p[j];
  const Vec x = m.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  Mat rho(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) rho(a, b) = x(a * d + b);
  return rho;
}

inline double projector_distance(const Vec& a, const Vec& b) {
  return (a * a.adjoint() - b * b.adjoint()).norm();
}

/// For each effect (normalized to unit trace) the index of the nearest ket
/// projector and the distance, by exhaustive search.
struct Nearest {
  std::size_t index;
  double distance;
};
inline std::vector<Nearest> brute_force_match(const std::vector<Mat>& effects, const std::vector<Vec>& kets) {
  std::vector<Nearest> out;
  for (const auto& e : effects) {
    const Mat n = e / e.trace().real();
    Nearest best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < kets.size(); ++k) {
      const double dist = (n - kets[k] * kets[k].adjoint()).norm();
      if (dist < best.distance) best = {k, dist};
    }
    out.push_back(best);
  }
  return out;
}

/// Simplex projection by trying every support set and keeping the feasible
/// candidate nearest to v.
inline std::vector<double> simplex_projection(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    int k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sum += v[i];
        ++k;
      }
    const double shift = (1.0 - sum) / k;
    std::vector<double> x(n, 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        x[i] = v[i] + shift;
        ok = ok && x[i] >= -1e-15;
      }
    if (!ok) continue;
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist += (x[i] - v[i]) * (x[i] - v[i]);
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

/// |count - shots p| within five binomial standard deviations (plus one
/// count of slack for p near 0 or 1).
inline bool within_5_sigma(std::uint64_t count, std::uint64_t shots, double p) {
  const double n = static_cast<double>(shots);
  return std::abs(static_cast<double>(count) - n * p) <= 5.0 * std::sqrt(n * p * (1.0 - p)) + 1.0;
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace oracle
