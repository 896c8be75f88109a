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

#include "sicpom/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sicpom/errors.hpp"

namespace sicpom {

namespace {

void require_supported_dim(Index dim, const char* what) {
  if (!is_supported_dim(dim)) {
    std::ostringstream msg;
    msg << what << ": unsupported dimension " << dim << " (expected 2, 4, 8 or 16)";
    throw DimensionError(msg.str());
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw DimensionError(msg.str());
  }
}

}  // namespace

Ket::Ket(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  require_supported_dim(amplitudes_.size(), "Ket");
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (!(deviation <= kNormTol)) {
    std::ostringstream msg;
    msg << "Ket: norm deviates from 1 by " << deviation;
    throw InvariantError(msg.str());
  }
}

Ket Ket::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvariantError("Ket: cannot normalize a zero vector");
  return Ket(v / n);
}

Ket Ket::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw DimensionError("Ket::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix m) : matrix_(std::move(m)) {
  require_square(matrix_, "DensityMatrix");
  require_supported_dim(matrix_.rows(), "DensityMatrix");
  const double herm = hermiticity_residual(matrix_);
  if (!(herm <= kHermitianTol)) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (residual " << herm << ")";
    throw InvariantError(msg.str());
  }
  const double trace_dev = std::abs(matrix_.trace() - cplx{1.0, 0.0});
  if (!(trace_dev <= kTraceTol)) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace deviates from 1 by " << trace_dev;
    throw InvariantError(msg.str());
  }
  const double smallest = hermitian_eigenvalues(matrix_).minCoeff();
  if (!(smallest >= -kPsdTol)) {
    std::ostringstream msg;
    msg << "DensityMatrix: not positive semidefinite (smallest eigenvalue " << smallest << ")";
    throw InvariantError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const Ket& k) { return DensityMatrix(k.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_unnormalized(const Matrix& m) {
  require_square(m, "DensityMatrix");
  Matrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw InvariantError("DensityMatrix: non-positive trace");
  return DensityMatrix(h / tr);
}

Effect::Effect(Matrix m, std::string label) : matrix_(std::move(m)), label_(std::move(label)) {
  require_square(matrix_, "Effect");
  require_supported_dim(matrix_.rows(), "Effect");
  const double herm = hermiticity_residual(matrix_);
  if (!(herm <= kHermitianTol)) {
    std::ostringstream msg;
    msg << "Effect " << label_ << ": not Hermitian (residual " << herm << ")";
    throw InvariantError(msg.str());
  }
  const double smallest = hermitian_eigenvalues(matrix_).minCoeff();
  if (!(smallest >= -kPsdTol)) {
    std::ostringstream msg;
    msg << "Effect " << label_ << ": not positive semidefinite (smallest eigenvalue " << smallest
        << ")";
    throw InvariantError(msg.str());
  }
}

double completeness_residual(const std::vector<Matrix>& effects) {
  if (effects.empty()) return 1.0;
  Matrix sum = Matrix::Zero(effects.front().rows(), effects.front().cols());
  for (const auto& e : effects) sum += e;
  return max_abs_entry(sum - identity(sum.rows()));
}

Pom::Pom(std::vector<Effect> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw InvariantError("POM: no effects");
  const Index d = effects_.front().dim();
  for (const auto& e : effects_) {
    if (e.dim() != d) throw DimensionError("POM: effects of mixed dimension");
  }
  const double residual = completeness_residual();
  if (!(residual <= kCompletenessTol)) {
    std::ostringstream msg;
    msg << "POM: effects do not sum to identity (residual " << residual << ")";
    throw InvariantError(msg.str());
  }
}

double Pom::completeness_residual() const {
  std::vector<Matrix> ms;
  ms.reserve(effects_.size());
  for (const auto& e : effects_) ms.push_back(e.matrix());
  return sicpom::completeness_residual(ms);
}

double born_probability(const DensityMatrix& rho, const Effect& e) {
  if (rho.dim() != e.dim()) throw DimensionError("born_probability: dimension mismatch");
  double p = (e.matrix() * rho.matrix()).trace().real();
  if (p < -kProbabilityClamp) {
    std::ostringstream msg;
    msg << "born_probability: negative probability " << p << " for effect " << e.label();
    throw InvariantError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

std::pair<DensityMatrix, double> post_measurement_state(const DensityMatrix& rho,
                                                        const Matrix& kraus) {
  if (kraus.cols() != rho.dim()) {
    throw DimensionError("post_measurement_state: Kraus operator does not act on the state");
  }
  const Matrix unnormalized = kraus * rho.matrix() * kraus.adjoint();
  const double p = unnormalized.trace().real();
  if (!(p > kMinOutcomeProbability)) {
    std::ostringstream msg;
    msg << "impossible outcome: probability " << p;
    throw ImpossibleOutcome(msg.str());
  }
  return {DensityMatrix::from_unnormalized(unnormalized), p};
}

double fidelity_pure(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity_pure: dimension mismatch");
  return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("state_fidelity: dimension mismatch");
  const Matrix root = psd_sqrt(a.matrix());
  const Matrix inner = root * b.matrix() * root;
  RealVector lambda = hermitian_eigenvalues(inner);
  // Eigenvalues at rounding level are zeros of a rank-deficient product; their
  // square roots (~1e-8) would otherwise dominate the error for pure states.
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::max(lambda.maxCoeff(), 1.0);
  double s = 0.0;
  for (double l : lambda) s += l > floor ? std::sqrt(l) : 0.0;
  return std::clamp(s * s, 0.0, 1.0);
}

double projector_distance(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionError("projector_distance: dimension mismatch");
  return (a.projector() - b.projector()).norm();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

}  // namespace sicpom
