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

#include <complex>

#include <Eigen/Dense>

namespace sicpom {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

// Numerical thresholds shared by the type invariants.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kProbabilityClamp = 1e-12;
inline constexpr double kMinOutcomeProbability = 1e-14;

/// Operator dimensions the quantum types accept.
bool is_supported_dim(Index dim);

/// Kronecker product; the left operand is the most significant factor.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

Matrix identity(Index dim);
Matrix dagger(const Matrix& m);
Matrix projector(const Vector& v);

/// Pauli matrices; index 1, 2, 3 for sigma_x, sigma_y, sigma_z.
Matrix pauli(int index);
Matrix hadamard();

/// Largest entry modulus of (m - m^dagger).
double hermiticity_residual(const Matrix& m);
/// Largest entry modulus.
double max_abs_entry(const Matrix& m);
/// Largest entry modulus of (u^dagger u - 1).
double unitarity_residual(const Matrix& u);

/// Ascending eigenvalues of the Hermitian part of m.
RealVector hermitian_eigenvalues(const Matrix& m);
/// Square root of a Hermitian PSD matrix; eigenvalues below zero are
/// truncated.
Matrix psd_sqrt(const Matrix& m);

/// min over phases of ||a - e^{i phi} b||_F, i.e. distance of two matrices
/// with the global phase quotiented out.
double phase_invariant_distance(const Matrix& a, const Matrix& b);

}  // namespace sicpom
