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

#include "sicpom/suite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sicpom/optics.hpp"
#include "sicpom/sic.hpp"
#include "sicpom/successive.hpp"

namespace sicpom {

namespace {

double max_effect_difference(const Pom& a, const Pom& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, max_abs_entry(a[j].matrix() - b[j].matrix()));
  return m;
}

ValidationReport tetrahedron_checks() {
  ValidationReport r;
  const TwoStepScheme scheme = two_step_scheme_d2();
  const Pom pom = compose_two_step(scheme);
  r.merge("sic", validate_sic(pom, 1e-12));
  double dot_err = 0.0;
  for (std::size_t i = 0; i < pom.size(); ++i) {
    for (std::size_t j = i + 1; j < pom.size(); ++j) {
      const double dot = bloch_vector_of(pom[i].matrix()).dot(bloch_vector_of(pom[j].matrix()));
      dot_err = std::max(dot_err, std::abs(dot + 1.0 / 3.0));
    }
  }
  r.add("bloch_dot", dot_err, 1e-10, "pairwise Bloch dot products vs -1/3");
  const double c = 1.0 / std::sqrt(3.0);
  const Matrix expect1 = 0.5 * (identity(2) - c * pauli(3));
  const Matrix expect2 = 0.5 * (identity(2) + c * pauli(3));
  const double first = std::max(max_abs_entry(scheme.first().effect(0) - expect1),
                                max_abs_entry(scheme.first().effect(1) - expect2));
  r.add("first_stage", first, 1e-12, "effects (1 -/+ sigma_z/sqrt3)/2");
  return r;
}

ValidationReport bench_checks() {
  ValidationReport r;
  const FirstStageParameters p = first_stage_parameters();
  const double n = sic_norm();
  const double chi = sic_chi();
  r.add("parameters.t1r2", std::abs(p.t1() * p.r2 - 1.0 / n), 1e-12);
  r.add("parameters.t1t2y", std::abs(p.t1() * p.t2() * p.y - 1.0 / n), 1e-12);
  r.add("parameters.t1t2x", std::abs(p.t1() * p.t2() * std::sqrt(1.0 - p.y * p.y) - chi / n), 1e-12);

  const auto ports = port_kraus(build_first_stage_bench_d4());
  const KrausSet target = kraus_first_stage_d4();
  double kraus_err = ports.size() == target.size() ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < std::min(ports.size(), target.size()); ++k) {
    kraus_err = std::max(kraus_err, phase_invariant_distance(ports[k].kraus, target[k]));
  }
  r.add("first_stage.kraus", kraus_err, 1e-10, "port Kraus vs diagonal A_k up to phase");

  for (int k = 1; k <= 4; ++k) {
    const PhotonicCircuit c = build_basis_circuit(k);
    const std::string prefix = "basis" + std::to_string(k);
    r.add(prefix + ".unitary", phase_invariant_distance(port_kraus(c).front().kraus, mub_unitary(k)), 1e-12);
    const std::size_t expected = k <= 2 ? 0 : 1;
    r.add_flag(prefix + ".entangling", c.count_entangling() == expected,
               std::to_string(c.count_entangling()) + " entangling element(s)");
  }

  const Pom full = full_bench_pom();
  r.merge("full.sic", validate_sic(full, 1e-10));
  const MatchReport m = match_to_sic(full, fiducial_kets(), 1e-10);
  r.add("full.match", m.passed ? m.max_distance : INFINITY, 1e-10, m.failure);
  r.add("full.vs_two_step", max_effect_difference(full, compose_two_step(two_step_scheme_d4())), 1e-10);
  r.add("tetrahedron.vs_two_step",
        max_effect_difference(detection_pom(build_tetrahedron_bench()), compose_two_step(two_step_scheme_d2())),
        1e-10);
  return r;
}

}  // namespace

ValidationReport run_invariant_suite() {
  ValidationReport report;
  report.merge("sic4", validate_sic(sic_pom(4), 1e-12));
  report.merge("sic2", validate_sic(sic_pom(2), 1e-12));
  report.merge("mub", validate_mub(mub_bases(), 1e-12));
  MubCollection from_unitaries;
  from_unitaries.bases.push_back(mub_bases().bases.front());
  for (int k = 1; k <= 4; ++k) from_unitaries.bases.push_back({"U" + std::to_string(k), basis_from_unitary(k)});
  report.merge("mub_unitaries", validate_mub(from_unitaries, 1e-12));

  const MatchReport m = match_to_sic(compose_two_step(two_step_scheme_d4()), fiducial_kets(), 1e-12);
  std::string perm;
  for (std::size_t n = 0; n < m.port_to_matrix.size(); ++n) {
    perm += (n ? " " : "") + std::to_string(n + 1) + "->" + std::to_string(m.port_to_matrix[n]);
  }
  report.add("two_step.match", m.passed ? m.max_distance : INFINITY, 1e-12,
             m.passed ? "port->matrix " + perm : m.failure);

  report.merge("tetrahedron", tetrahedron_checks());
  report.merge("bench", bench_checks());
  return report;
}

}  // namespace sicpom
