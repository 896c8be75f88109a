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

#include "sicpom/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "sicpom/errors.hpp"

namespace sicpom {

bool is_supported_dim(Index dim) { return dim == 2 || dim == 4 || dim == 8 || dim == 16; }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out = Eigen::kroneckerProduct(a, b).eval();
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out = Eigen::kroneckerProduct(a, b).eval();
  return out;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix pauli(int index) {
  Matrix m(2, 2);
  switch (index) {
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -kI, kI, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw DimensionError("pauli index must be 1, 2 or 3");
  }
  return m;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

double hermiticity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity check needs a square matrix");
  return max_abs_entry(m - m.adjoint());
}

double max_abs_entry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double unitarity_residual(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity check needs a square matrix");
  return max_abs_entry(u.adjoint() * u - identity(u.rows()));
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.cast<cplx>().asDiagonal() * solver.eigenvectors().adjoint();
}

double phase_invariant_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("phase_invariant_distance: shape mismatch");
  }
  // Minimal when e^{i phi} rotates <a,b> = tr(a^dagger b) onto the positive
  // real axis. The difference is formed explicitly; the expanded quadratic
  // form loses ~8 digits to cancellation near zero.
  const cplx overlap = (a.adjoint() * b).trace();
  const double mag = std::abs(overlap);
  const cplx phase = mag > 0.0 ? std::conj(overlap) / mag : cplx{1.0, 0.0};
  return (a - phase * b).norm();
}

}  // namespace sicpom
