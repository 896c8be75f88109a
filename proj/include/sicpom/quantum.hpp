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

#include <string>
#include <utility>
#include <vector>

#include "sicpom/linalg.hpp"

namespace sicpom {

/// Unit vector in a 2, 4, 8 or 16 dimensional Hilbert space.
class Ket {
 public:
  /// Throws InvariantError unless |amplitudes| = 1 within kNormTol.
  explicit Ket(Vector amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static Ket normalized(const Vector& v);
  static Ket basis(Index dim, Index index);

  const Vector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  cplx operator[](Index i) const { return amplitudes_(i); }
  Matrix projector() const { return sicpom::projector(amplitudes_); }

 private:
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates hermiticity (1e-12), trace (1e-12) and the smallest eigenvalue
  /// (>= -1e-10). Throws InvariantError naming the first violated condition.
  explicit DensityMatrix(Matrix m);
  static DensityMatrix pure(const Ket& k);
  static DensityMatrix maximally_mixed(Index dim);
  /// Hermitizes and renormalizes the trace before validating; for outputs of
  /// arithmetic that is exact only up to round-off.
  static DensityMatrix from_unnormalized(const Matrix& m);

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

/// Positive operator of a POM, with an outcome label.
class Effect {
 public:
  Effect(Matrix m, std::string label);

  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  std::string label_;
};

/// Ordered list of effects summing to the identity (entrywise, 1e-10).
class Pom {
 public:
  explicit Pom(std::vector<Effect> effects);

  const std::vector<Effect>& effects() const { return effects_; }
  const Effect& operator[](std::size_t i) const { return effects_[i]; }
  std::size_t size() const { return effects_.size(); }
  Index dim() const { return effects_.front().dim(); }
  /// max |sum_j e_j - 1| over entries.
  double completeness_residual() const;

 private:
  std::vector<Effect> effects_;
};

double completeness_residual(const std::vector<Matrix>& effects);

/// Born rule Re tr(e rho). Values in [-1e-12, 0) are clamped to 0, more
/// negative ones raise InvariantError.
double born_probability(const DensityMatrix& rho, const Effect& e);

/// Conditional state K rho K^dagger / p together with p.
/// Throws ImpossibleOutcome when p <= 1e-14.
std::pair<DensityMatrix, double> post_measurement_state(const DensityMatrix& rho,
                                                        const Matrix& kraus);

/// |<a|b>|^2.
double fidelity_pure(const Ket& a, const Ket& b);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Frobenius norm of |a><a| - |b><b|; insensitive to global phases.
double projector_distance(const Ket& a, const Ket& b);

/// (1/2) ||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace sicpom
