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

#include "sicpom/successive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sicpom/errors.hpp"
#include "sicpom/random.hpp"

namespace sicpom {

KrausSet::KrausSet(std::vector<Matrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw InvariantError("KrausSet: no operators");
  const Index d = operators_.front().cols();
  for (const auto& a : operators_) {
    if (a.rows() != d || a.cols() != d) throw DimensionError("KrausSet: operators must share one square dimension");
  }
  std::vector<Matrix> effects;
  for (const auto& a : operators_) effects.push_back(a.adjoint() * a);
  const double residual = completeness_residual(effects);
  if (!(residual <= 1e-12)) {
    std::ostringstream msg;
    msg << "KrausSet: sum of A^dagger A deviates from identity by " << residual;
    throw InvariantError(msg.str());
  }
}

TwoStepScheme::TwoStepScheme(KrausSet first, std::vector<std::vector<Ket>> conditional_bases)
    : first_(std::move(first)), bases_(std::move(conditional_bases)) {
  const Index d = first_.dim();
  if (bases_.size() != first_.size()) {
    throw DimensionError("TwoStepScheme: one conditional basis per first-stage outcome required");
  }
  for (const auto& basis : bases_) {
    if (basis.size() != static_cast<std::size_t>(d)) {
      throw DimensionError("TwoStepScheme: conditional basis has the wrong number of kets");
    }
    Matrix gram(d, d);
    for (Index r = 0; r < d; ++r) {
      if (basis[r].dim() != d) throw DimensionError("TwoStepScheme: ket dimension mismatch");
      for (Index c = 0; c < d; ++c) gram(r, c) = basis[r].amplitudes().dot(basis[c].amplitudes());
    }
    const double residual = max_abs_entry(gram - identity(d));
    if (!(residual <= 1e-12)) {
      std::ostringstream msg;
      msg << "TwoStepScheme: conditional basis not orthonormal (residual " << residual << ")";
      throw InvariantError(msg.str());
    }
  }
}

std::string OutcomeLabel::to_string() const {
  return "(" + std::to_string(port) + "," + std::to_string(result) + ")";
}

OutcomeLabel OutcomeLabel::parse(const std::string& text) {
  OutcomeLabel l;
  char tail = 0;
  if (std::sscanf(text.c_str(), "(%d,%d%c", &l.port, &l.result, &tail) != 3 || tail != ')') {
    throw ConfigError("malformed outcome label '" + text + "'");
  }
  return l;
}

std::vector<OutcomeLabel> lexicographic_labels(int dim) {
  std::vector<OutcomeLabel> labels;
  for (int n = 1; n <= dim; ++n) {
    for (int m = 1; m <= dim; ++m) labels.push_back({n, m});
  }
  return labels;
}

KrausSet kraus_first_stage_d4() {
  const double n = sic_norm();
  const double x = sic_chi();
  std::vector<Matrix> ops;
  for (int k = 0; k < 4; ++k) {
    Vector diag = Vector::Constant(4, 1.0 / n);
    diag(k) = x / n;
    ops.emplace_back(diag.asDiagonal());
  }
  return KrausSet(std::move(ops));
}

KrausSet kraus_first_stage_d2() {
  const double small = std::sqrt(0.5 - 1.0 / std::sqrt(12.0));
  const double large = std::sqrt(0.5 + 1.0 / std::sqrt(12.0));
  // BS1 has t1 = small, r1 = large; BS2 has t2 = large, r2 = small.
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 0) = small;
  a1(1, 1) = large;
  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = large;
  a2(1, 1) = small;
  return KrausSet({a1, a2});
}

TwoStepScheme two_step_scheme_d4() {
  std::vector<std::vector<Ket>> bases;
  for (int k = 1; k <= 4; ++k) bases.push_back(basis_from_unitary(k));
  return TwoStepScheme(kraus_first_stage_d4(), std::move(bases));
}

TwoStepScheme two_step_scheme_d2() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Ket> x_basis{Ket(Vector{{s, s}}), Ket(Vector{{s, -s}})};
  std::vector<Ket> y_basis{Ket(Vector{{cplx{s, 0.0}, s * kI}}),
                           Ket(Vector{{cplx{s, 0.0}, -s * kI}})};
  return TwoStepScheme(kraus_first_stage_d2(), {x_basis, y_basis});
}

Pom compose_two_step(const TwoStepScheme& s) {
  std::vector<Effect> effects;
  for (std::size_t n = 0; n < s.ports(); ++n) {
    const Matrix& a = s.first()[n];
    const auto& basis = s.basis(n);
    for (std::size_t m = 0; m < basis.size(); ++m) {
      Matrix e = a.adjoint() * basis[m].projector() * a;
      e = 0.5 * (e + e.adjoint());
      OutcomeLabel label{static_cast<int>(n + 1), static_cast<int>(m + 1)};
      effects.emplace_back(std::move(e), label.to_string());
    }
  }
  return Pom(std::move(effects));
}

MatchReport match_to_sic(const Pom& pom16, const FiducialSet& fid, double tol) {
  MatchReport report;
  if (pom16.size() != 16 || pom16.dim() != 4) {
    report.failure = "expected 16 effects of dimension 4";
    return report;
  }
  std::vector<int> claimed(16, -1);
  report.assignment.assign(16, FiducialIndex{});
  for (std::size_t j = 0; j < 16; ++j) {
    const Matrix& e = pom16[j].matrix();
    const double tr = e.trace().real();
    const Matrix normalized = tr > 0.0 ? Matrix(e / tr) : e;
    int found = -1;
    int hits = 0;
    double best = 0.0;
    for (std::size_t f = 0; f < 16; ++f) {
      const double dist = (normalized - fid.kets()[f].projector()).norm();
      if (dist < tol) {
        ++hits;
        found = static_cast<int>(f);
        best = dist;
      }
    }
    if (hits != 1) {
      std::ostringstream msg;
      msg << "effect " << pom16[j].label() << " matched " << hits << " fiducials";
      if (report.failure.empty()) report.failure = msg.str();
      continue;
    }
    if (claimed[found] >= 0) {
      std::ostringstream msg;
      msg << "fiducial " << FiducialSet::index_of(found).to_string() << " matched by both "
          << pom16[claimed[found]].label() << " and " << pom16[j].label();
      if (report.failure.empty()) report.failure = msg.str();
      continue;
    }
    claimed[found] = static_cast<int>(j);
    report.assignment[j] = FiducialSet::index_of(found);
    report.max_distance = std::max(report.max_distance, best);
  }
  report.passed = report.failure.empty();
  report.port_to_matrix.assign(4, 0);
  for (int n = 0; n < 4; ++n) {
    const int m0 = report.assignment[n * 4].matrix;
    bool same = m0 != 0;
    for (int m = 1; m < 4; ++m) same = same && report.assignment[n * 4 + m].matrix == m0;
    report.port_to_matrix[n] = same ? m0 : 0;
  }
  return report;
}

Pom align_sic_to_two_step(const Pom& reference, double tol) {
  const FiducialSet fid = fiducial_kets();
  const MatchReport match = match_to_sic(reference, fid, tol);
  if (!match.passed) throw InvariantError("align_sic_to_two_step: " + match.failure);
  std::vector<Effect> effects;
  for (std::size_t j = 0; j < 16; ++j) {
    effects.emplace_back(fid.at(match.assignment[j]).projector() / 4.0, reference[j].label());
  }
  return Pom(std::move(effects));
}

std::vector<double> sequential_distribution(const DensityMatrix& rho, const TwoStepScheme& s) {
  if (rho.dim() != s.dim()) throw DimensionError("sequential_distribution: dimension mismatch");
  std::vector<double> probs;
  for (std::size_t n = 0; n < s.ports(); ++n) {
    const auto& basis = s.basis(n);
    const double p_port =
        (s.first()[n] * rho.matrix() * s.first()[n].adjoint()).trace().real();
    if (!(p_port > kMinOutcomeProbability)) {
      probs.insert(probs.end(), basis.size(), 0.0);
      continue;
    }
    const auto [conditional, p] = post_measurement_state(rho, s.first()[n]);
    for (const auto& b : basis) {
      const double q = std::max(0.0, b.amplitudes().dot(conditional.matrix() * b.amplitudes()).real());
      probs.push_back(p * q);
    }
  }
  return probs;
}

std::vector<std::uint64_t> sample_sequential(const DensityMatrix& rho, const TwoStepScheme& s,
                                             std::uint64_t shots, std::uint64_t seed) {
  if (rho.dim() != s.dim()) throw DimensionError("sample_sequential: dimension mismatch");
  const std::size_t ports = s.ports();
  const std::size_t results = static_cast<std::size_t>(s.dim());

  // First-stage distribution and, for each reachable port, the distribution
  // of the second measurement on the renormalized post-measurement state.
  std::vector<double> port_probs(ports, 0.0);
  std::vector<std::vector<double>> conditional_cdf(ports);
  for (std::size_t n = 0; n < ports; ++n) {
    const double p_port =
        (s.first()[n] * rho.matrix() * s.first()[n].adjoint()).trace().real();
    if (!(p_port > kMinOutcomeProbability)) continue;
    const auto [conditional, p] = post_measurement_state(rho, s.first()[n]);
    port_probs[n] = p;
    std::vector<double> q;
    for (const auto& b : s.basis(n)) {
      q.push_back(std::max(0.0, b.amplitudes().dot(conditional.matrix() * b.amplitudes()).real()));
    }
    conditional_cdf[n] = cumulative(q);
  }
  const std::vector<double> port_cdf = cumulative(port_probs);

  constexpr std::uint64_t kBatch = 65536;
  std::vector<std::uint64_t> counts(ports * results, 0);
  for (std::uint64_t batch = 0; batch * kBatch < shots; ++batch) {
    Rng rng = Rng::stream(seed, batch);
    const std::uint64_t n_shots = std::min(kBatch, shots - batch * kBatch);
    for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
      const std::size_t n = rng.categorical(port_cdf);
      const std::size_t m = rng.categorical(conditional_cdf[n]);
      ++counts[n * results + m];
    }
  }
  return counts;
}

}  // namespace sicpom
