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
#include <vector>

#include "sicpom/quantum.hpp"
#include "sicpom/validation.hpp"

namespace sicpom {

/// N = sqrt(5 + sqrt 5), the normalization of the two-qubit fiducial kets.
double sic_norm();
/// chi = sqrt(2 + sqrt 5); note chi^2 + 3 = N^2.
double sic_chi();

/// Position of a fiducial ket: matrix 1..4 in reading order (top-left,
/// top-right, bottom-left, bottom-right), column 1..4.
struct FiducialIndex {
  int matrix = 0;
  int column = 0;

  friend bool operator==(const FiducialIndex&, const FiducialIndex&) = default;
  std::string to_string() const;
};

/// The sixteen two-qubit fiducial kets, stored matrix-major.
class FiducialSet {
 public:
  explicit FiducialSet(std::vector<Ket> kets);

  const Ket& at(int matrix, int column) const;
  const Ket& at(const FiducialIndex& idx) const { return at(idx.matrix, idx.column); }
  const std::vector<Ket>& kets() const { return kets_; }
  static FiducialIndex index_of(std::size_t flat);

  /// The 4x4 matrix whose columns are the kets of `matrix`, scaled by N.
  Matrix scaled_matrix(int matrix) const;

 private:
  std::vector<Ket> kets_;
};

FiducialSet fiducial_kets();

/// SIC POM for dim 2 (tetrahedron, as a two-step composition) or dim 4
/// (effects |psi><psi|/4 over the fiducial set). Throws DimensionError
/// otherwise.
Pom sic_pom(int dim);

/// Checks completeness, rank one, trace 1/d and pairwise fidelity 1/(d+1).
/// Failures are recorded in the report, never thrown.
ValidationReport validate_sic(const Pom& pom, double tol);

struct Basis {
  std::string name;
  std::vector<Ket> kets;
};

/// Computational basis followed by the four bases B1..B4.
struct MubCollection {
  std::vector<Basis> bases;
};

/// Bases assembled from their product form: B1 = X-eigenbasis x X-eigenbasis,
/// B2 = Y x Y, B3 = CZ (Y x X), B4 = CZ (X x Y).
MubCollection mub_bases();

/// The unitary U_k (k = 1..4) mapping the computational basis onto B_k.
Matrix mub_unitary(int k);

/// Columns of U_k as kets.
std::vector<Ket> basis_from_unitary(int k);

ValidationReport validate_mub(const MubCollection& c, double tol);

/// Qubit Bloch vector.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

BlochVector bloch_vector(const DensityMatrix& rho);
/// (1 + v.sigma)/2; throws InvariantError when |v| > 1 + 1e-12.
DensityMatrix bloch_to_state(const BlochVector& v);
/// Bloch vector of a (not necessarily unit-trace) Hermitian 2x2 operator
/// after trace normalization.
BlochVector bloch_vector_of(const Matrix& m);

}  // namespace sicpom
