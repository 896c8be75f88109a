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

#include "sicpom/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "sicpom/errors.hpp"

namespace sicpom {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.empty() || !std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; })) {
    throw ConfigError("invalid seed '" + text + "': expected a decimal unsigned 64-bit integer");
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("invalid seed '" + text + "': out of range for unsigned 64-bit");
  }
  return value;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::size_t Rng::categorical(std::span<const double> cdf) {
  const double total = cdf.back();
  const double u = uniform() * total;
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
  if (idx >= cdf.size()) idx = cdf.size() - 1;
  // u * total can round up to total; step back off trailing zero-mass outcomes.
  while (idx > 0 && cdf[idx] == cdf[idx - 1]) --idx;
  return idx;
}

std::vector<double> cumulative(std::span<const double> probabilities) {
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf[i] = acc;
  }
  return cdf;
}

namespace {

Vector gaussian_vector(Index dim, Rng& rng) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = cplx{re, im};
  }
  return v;
}

Matrix gaussian_matrix(Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
  return g;
}

}  // namespace

Ket random_pure_ket(Index dim, Rng& rng) { return Ket::normalized(gaussian_vector(dim, rng)); }

DensityMatrix random_pure_state(Index dim, Rng& rng) {
  return DensityMatrix::pure(random_pure_ket(dim, rng));
}

DensityMatrix random_mixed_state(Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, rng);
  return DensityMatrix::from_unnormalized(g * g.adjoint());
}

Matrix random_unitary(Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

}  // namespace sicpom
