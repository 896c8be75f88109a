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

#include "sicpom/sic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sicpom/errors.hpp"
#include "sicpom/successive.hpp"

namespace sicpom {

double sic_norm() { return std::sqrt(5.0 + std::sqrt(5.0)); }
double sic_chi() { return std::sqrt(2.0 + std::sqrt(5.0)); }

std::string FiducialIndex::to_string() const {
  return "M" + std::to_string(matrix) + "C" + std::to_string(column);
}

FiducialSet::FiducialSet(std::vector<Ket> kets) : kets_(std::move(kets)) {
  if (kets_.size() != 16) throw DimensionError("FiducialSet: expected 16 kets");
  for (const auto& k : kets_) {
    if (k.dim() != 4) throw DimensionError("FiducialSet: kets must be 4-dimensional");
  }
}

const Ket& FiducialSet::at(int matrix, int column) const {
  if (matrix < 1 || matrix > 4 || column < 1 || column > 4) {
    throw DimensionError("FiducialSet: index out of range");
  }
  return kets_[static_cast<std::size_t>((matrix - 1) * 4 + (column - 1))];
}

FiducialIndex FiducialSet::index_of(std::size_t flat) {
  return {static_cast<int>(flat / 4) + 1, static_cast<int>(flat % 4) + 1};
}

Matrix FiducialSet::scaled_matrix(int matrix) const {
  Matrix m(4, 4);
  for (int c = 1; c <= 4; ++c) m.col(c - 1) = at(matrix, c).amplitudes() * sic_norm();
  return m;
}

FiducialSet fiducial_kets() {
  const double x = sic_chi();
  const cplx ix = kI * x;
  const cplx i = kI;
  std::vector<Matrix> ms(4, Matrix(4, 4));
  // clang-format off
  ms[0] << x,   x,  x,  x,
           1,  -1,  1, -1,
           1,   1, -1, -1,
           1,  -1, -1,  1;
  ms[1] << 1,   1,   1,   1,
           1,  -1,   1,  -1,
           ix,  ix, -ix, -ix,
          -i,   i,   i,  -i;
  ms[2] << 1,   1,   1,   1,
           ix, -ix,  ix, -ix,
           i,   i,  -i,  -i,
          -1,   1,   1,  -1;
  ms[3] << 1,   1,   1,   1,
           i,  -i,   i,  -i,
           1,   1,  -1,  -1,
          -ix,  ix,  ix, -ix;
  // clang-format on
  std::vector<Ket> kets;
  kets.reserve(16);
  for (const auto& m : ms) {
    for (Index c = 0; c < 4; ++c) kets.emplace_back(Vector(m.col(c) / sic_norm()));
  }
  return FiducialSet(std::move(kets));
}

Pom sic_pom(int dim) {
  if (dim == 2) return compose_two_step(two_step_scheme_d2());
  if (dim != 4) throw DimensionError("sic_pom: only dimensions 2 and 4 are supported");
  const FiducialSet fid = fiducial_kets();
  std::vector<Effect> effects;
  effects.reserve(16);
  for (std::size_t j = 0; j < 16; ++j) {
    effects.emplace_back(fid.kets()[j].projector() / 4.0, FiducialSet::index_of(j).to_string());
  }
  return Pom(std::move(effects));
}

ValidationReport validate_sic(const Pom& pom, double tol) {
  ValidationReport report;
  const Index d = pom.dim();
  const std::size_t n = pom.size();
  report.add_flag("outcome_count", n == static_cast<std::size_t>(d * d),
                  std::to_string(n) + " effects, expected " + std::to_string(d * d));
  report.add("completeness", pom.completeness_residual(), tol);

  double worst_rank = 0.0;
  double worst_trace = 0.0;
  std::string worst_rank_label;
  std::vector<Matrix> normalized;
  normalized.reserve(n);
  for (const auto& e : pom.effects()) {
    const RealVector ev = hermitian_eigenvalues(e.matrix());
    const double second = ev.size() >= 2 ? ev(ev.size() - 2) : 0.0;
    if (second > worst_rank) {
      worst_rank = second;
      worst_rank_label = e.label();
    }
    const double tr = e.matrix().trace().real();
    worst_trace = std::max(worst_trace, std::abs(tr - 1.0 / static_cast<double>(d)));
    normalized.push_back(tr > 0.0 ? Matrix(e.matrix() / tr) : e.matrix());
  }
  report.add("rank_one", worst_rank, tol,
             worst_rank_label.empty() ? "" : "largest second eigenvalue at " + worst_rank_label);
  report.add("trace", worst_trace, tol);

  const double target = 1.0 / static_cast<double>(d + 1);
  double worst_fid = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double f = (normalized[a] * normalized[b]).trace().real();
      worst_fid = std::max(worst_fid, std::abs(f - target));
      ++pairs;
    }
  }
  std::ostringstream detail;
  detail << pairs << " pairs against " << target;
  report.add("pairwise_fidelity", worst_fid, tol, detail.str());
  return report;
}

namespace {

std::vector<Vector> x_eigenbasis() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Vector{{s, s}}, Vector{{s, -s}}};
}

std::vector<Vector> y_eigenbasis() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Vector{{cplx{s, 0.0}, s * kI}}, Vector{{cplx{s, 0.0}, -s * kI}}};
}

Basis product_basis(std::string name, const std::vector<Vector>& first,
                    const std::vector<Vector>& second, bool apply_cz) {
  Basis b{std::move(name), {}};
  for (const auto& f : first) {
    for (const auto& s : second) {
      Vector v = tensor(f, s);
      if (apply_cz) v(3) = -v(3);
      b.kets.push_back(Ket::normalized(v));
    }
  }
  return b;
}

}  // namespace

MubCollection mub_bases() {
  MubCollection c;
  Basis comp{"computational", {}};
  for (Index j = 0; j < 4; ++j) comp.kets.push_back(Ket::basis(4, j));
  c.bases.push_back(std::move(comp));
  c.bases.push_back(product_basis("B1", x_eigenbasis(), x_eigenbasis(), false));
  c.bases.push_back(product_basis("B2", y_eigenbasis(), y_eigenbasis(), false));
  c.bases.push_back(product_basis("B3", y_eigenbasis(), x_eigenbasis(), true));
  c.bases.push_back(product_basis("B4", x_eigenbasis(), y_eigenbasis(), true));
  return c;
}

Matrix mub_unitary(int k) {
  const cplx i = kI;
  Matrix u(4, 4);
  switch (k) {
    case 1:
      u << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
      break;
    case 2:
      u << 1, 1, 1, 1, i, -i, i, -i, i, i, -i, -i, -1, 1, 1, -1;
      break;
    case 3:
      u << 1, 1, 1, 1, 1, -1, 1, -1, i, i, -i, -i, -i, i, i, -i;
      break;
    case 4:
      u << 1, 1, 1, 1, i, -i, i, -i, 1, 1, -1, -1, -i, i, i, -i;
      break;
    default:
      throw DimensionError("mub_unitary: k must be in 1..4");
  }
  return u / 2.0;
}

std::vector<Ket> basis_from_unitary(int k) {
  const Matrix u = mub_unitary(k);
  std::vector<Ket> kets;
  for (Index c = 0; c < 4; ++c) kets.emplace_back(Vector(u.col(c)));
  return kets;
}

ValidationReport validate_mub(const MubCollection& c, double tol) {
  ValidationReport report;
  if (c.bases.empty()) {
    report.add_flag("basis_count", false, "empty collection");
    return report;
  }
  const Index d = c.bases.front().kets.empty() ? 0 : c.bases.front().kets.front().dim();
  report.add_flag("basis_count", c.bases.size() == static_cast<std::size_t>(d + 1),
                  std::to_string(c.bases.size()) + " bases, complete set has " +
                      std::to_string(d + 1));
  for (const auto& b : c.bases) {
    const Index n = static_cast<Index>(b.kets.size());
    Matrix gram(n, n);
    for (Index r = 0; r < n; ++r) {
      for (Index s = 0; s < n; ++s) gram(r, s) = b.kets[r].amplitudes().dot(b.kets[s].amplitudes());
    }
    double residual = n == d ? max_abs_entry(gram - identity(n)) : 1.0;
    report.add("orthonormal." + b.name, residual, tol);
  }
  const double target = d > 0 ? 1.0 / static_cast<double>(d) : 0.0;
  for (std::size_t a = 0; a < c.bases.size(); ++a) {
    for (std::size_t b = a + 1; b < c.bases.size(); ++b) {
      double worst = 0.0;
      for (const auto& ka : c.bases[a].kets) {
        for (const auto& kb : c.bases[b].kets) {
          worst = std::max(worst, std::abs(fidelity_pure(ka, kb) - target));
        }
      }
      report.add("unbiased." + c.bases[a].name + "-" + c.bases[b].name, worst, tol);
    }
  }
  return report;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector_of(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("Bloch vector needs a 2x2 operator");
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw InvariantError("Bloch vector: operator has non-positive trace");
  const Matrix rho = m / tr;
  return {(pauli(1) * rho).trace().real(), (pauli(2) * rho).trace().real(),
          (pauli(3) * rho).trace().real()};
}

BlochVector bloch_vector(const DensityMatrix& rho) { return bloch_vector_of(rho.matrix()); }

DensityMatrix bloch_to_state(const BlochVector& v) {
  if (!(v.norm() <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "bloch_to_state: |v| = " << v.norm() << " exceeds 1";
    throw InvariantError(msg.str());
  }
  const Matrix m = 0.5 * (identity(2) + v.x * pauli(1) + v.y * pauli(2) + v.z * pauli(3));
  return DensityMatrix(m);
}

}  // namespace sicpom
