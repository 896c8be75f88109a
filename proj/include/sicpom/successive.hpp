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

#include <cstdint>
#include <string>
#include <vector>

#include "sicpom/quantum.hpp"
#include "sicpom/sic.hpp"

namespace sicpom {

/// Kraus operators of one measurement, sum_k A_k^dagger A_k = 1 within 1e-12.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Matrix> operators);

  const std::vector<Matrix>& operators() const { return operators_; }
  const Matrix& operator[](std::size_t k) const { return operators_[k]; }
  std::size_t size() const { return operators_.size(); }
  Index dim() const { return operators_.front().cols(); }
  Matrix effect(std::size_t k) const { return operators_[k].adjoint() * operators_[k]; }

 private:
  std::vector<Matrix> operators_;
};

/// A first measurement followed by a projective measurement in a basis that
/// depends on the first outcome (basis k after port k).
class TwoStepScheme {
 public:
  TwoStepScheme(KrausSet first, std::vector<std::vector<Ket>> conditional_bases);

  const KrausSet& first() const { return first_; }
  const std::vector<Ket>& basis(std::size_t port) const { return bases_[port]; }
  std::size_t ports() const { return bases_.size(); }
  Index dim() const { return first_.dim(); }

 private:
  KrausSet first_;
  std::vector<std::vector<Ket>> bases_;
};

/// (port, result), both 1-based.
struct OutcomeLabel {
  int port = 0;
  int result = 0;

  friend auto operator<=>(const OutcomeLabel&, const OutcomeLabel&) = default;
  std::string to_string() const;
  /// Parses "(n,m)" as produced by to_string.
  static OutcomeLabel parse(const std::string& text);
};

/// Lexicographic (port, result) labels for d ports with d results each.
std::vector<OutcomeLabel> lexicographic_labels(int dim);

/// A_k = diag with chi/N on entry k and 1/N elsewhere.
KrausSet kraus_first_stage_d4();
/// A_1 = diag(t1, t2), A_2 = diag(r1, r2) with t1 = r2 = sqrt(1/2 - 1/sqrt 12).
KrausSet kraus_first_stage_d2();

/// Ports 1..4 followed by the columns of U_1..U_4.
TwoStepScheme two_step_scheme_d4();
/// Port 1 followed by the sigma_x eigenbasis, port 2 by the sigma_y eigenbasis.
TwoStepScheme two_step_scheme_d2();

/// Effects A_n^dagger |b_m><b_m| A_n in lexicographic (n, m) order.
Pom compose_two_step(const TwoStepScheme& s);

struct MatchReport {
  /// assignment[j] is the fiducial matched by effect j (0/0 if unmatched).
  std::vector<FiducialIndex> assignment;
  /// port_to_matrix[n-1] is the fiducial matrix shared by all results of
  /// port n, or 0 when the port's results spread over several matrices.
  std::vector<int> port_to_matrix;
  double max_distance = 0.0;
  bool passed = false;
  std::string failure;
};

/// Pairs each effect (normalized to a projector) with the unique fiducial
/// whose projector lies within tol. Fails on unmatched or doubly matched
/// fiducials.
MatchReport match_to_sic(const Pom& pom16, const FiducialSet& fid, double tol);

/// Reorders sic_pom(4) into the (port, result) order of `reference` using
/// match_to_sic; effects are relabeled with the (n,m) labels.
Pom align_sic_to_two_step(const Pom& reference, double tol);

/// Simulates shots one by one: port from tr(rho A^dagger A), state update by
/// post_measurement_state, result from the conditional basis. Counts are in
/// lexicographic (port, result) order. Shots are processed in batches of
/// 65536 on streams derive_seed(seed, batch).
std::vector<std::uint64_t> sample_sequential(const DensityMatrix& rho, const TwoStepScheme& s,
                                             std::uint64_t shots, std::uint64_t seed);

/// Joint probabilities of the sequential chain, in lexicographic order.
std::vector<double> sequential_distribution(const DensityMatrix& rho, const TwoStepScheme& s);

}  // namespace sicpom
