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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sicpom/errors.hpp"
#include "sicpom/io.hpp"
#include "sicpom/optics.hpp"
#include "sicpom/random.hpp"
#include "sicpom/successive.hpp"

using namespace sicpom;

namespace {

const double kPi = std::acos(-1.0);

PhotonicCircuit path_circuit(std::vector<OpticalElement> elements) {
  CircuitDescription d;
  d.name = "test";
  d.encoding = Encoding::Path;
  d.modes = {"L", "R"};
  d.elements = std::move(elements);
  d.input_first = "L";
  d.input_second = "R";
  d.first_stage_size = d.elements.size();
  d.ports = {{"out", "L", "R"}};
  return PhotonicCircuit(std::move(d));
}

Matrix embedded_kraus(const PhotonicCircuit& c) { return port_kraus(c).front().kraus; }

}  // namespace

TEST_CASE("element unitaries") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const double r = rng.uniform();
    const double rv = rng.uniform();
    const double rh = rng.uniform();
    CHECK(unitarity_residual(element_unitary(OpticalElement::beam_splitter(r, "a", "b"))) < 1e-12);
    CHECK(unitarity_residual(element_unitary(OpticalElement::ppbs(rv, rh, "a", "b"))) < 1e-12);
    CHECK(unitarity_residual(element_unitary(OpticalElement::half_wave_plate(rng.normal(), {"a"}))) < 1e-12);
    CHECK(unitarity_residual(element_unitary(OpticalElement::phase_shifter(rng.normal(), {"a", "b"}))) < 1e-12);
  }

  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  CHECK(max_abs_entry(element_unitary(OpticalElement::ppbs(1.0, 1.0, "a", "b")) - cz) < 1e-15);
  CHECK(max_abs_entry(element_unitary(OpticalElement::controlled_z("a", "b")) - cz) < 1e-15);

  // PBS: v stays in its mode, h swaps modes.
  const Matrix pbs = element_unitary(OpticalElement::ppbs(1.0, 0.0, "a", "b"));
  CHECK(std::abs(pbs(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(pbs(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(pbs(2, 3)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(pbs(3, 2)) - 1.0) < 1e-15);

  CHECK(max_abs_entry(element_unitary(OpticalElement::half_wave_plate(kPi / 8, {"a"})) - hadamard()) < 1e-12);

  // PPBS blocks with r_v = t_h = y.
  const double y = 0.3;
  const double x = std::sqrt(1 - y * y);
  const Matrix p = element_unitary(OpticalElement::ppbs(y, x, "a", "b"));
  Matrix expect = Matrix::Zero(4, 4);
  expect.block(0, 0, 2, 2) << y, x, -x, y;
  expect.block(2, 2, 2, 2) << x, y, y, -x;
  CHECK(max_abs_entry(p - expect) < 1e-15);

  CHECK_THROWS_AS(OpticalElement::beam_splitter(1.5, "a", "b").validate(), InvariantError);
  CHECK_THROWS_AS(OpticalElement::ppbs(-0.1, 0.5, "a", "b").validate(), InvariantError);
  CHECK_THROWS_AS(OpticalElement::beam_splitter(0.5, "a", "a").validate(), InvariantError);
}

TEST_CASE("inverse elements") {
  const std::vector<OpticalElement> els{
      OpticalElement::beam_splitter(0.3, "a", "b"), OpticalElement::half_wave_plate(0.4, {"a", "b"}),
      OpticalElement::phase_shifter(1.3, {"a"}, Polarization::Horizontal),
      OpticalElement::phase_shifter(-0.2, {"a", "b"}, Polarization::Vertical),
      OpticalElement::ppbs(1.0, 1.0, "a", "b"), OpticalElement::ppbs(1.0, 0.0, "a", "b"),
      OpticalElement::controlled_z("a", "b")};
  for (const auto& e : els) {
    const Matrix u = element_unitary(e);
    CHECK(max_abs_entry(element_unitary(inverse(e)) * u - identity(u.rows())) < 1e-14);
  }
  CHECK_THROWS_AS(inverse(OpticalElement::ppbs(0.4, 0.9, "a", "b")), InvariantError);
}

TEST_CASE("path circuits") {
  CHECK(max_abs_entry(circuit_unitary(path_circuit({})) - identity(4)) == 0.0);
  const double h = std::sqrt(0.5);
  const PhotonicCircuit one = path_circuit({OpticalElement::beam_splitter(h, "L", "R")});
  CHECK(max_abs_entry(embedded_kraus(one) - hadamard()) < 1e-15);
  const PhotonicCircuit two =
      path_circuit({OpticalElement::beam_splitter(h, "L", "R"), OpticalElement::beam_splitter(h, "L", "R")});
  CHECK(max_abs_entry(circuit_unitary(two) - identity(4)) < 1e-15);

  const PhotonicCircuit ps = path_circuit({OpticalElement::phase_shifter(kPi / 2, {"R"})});
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = kI;
  CHECK(max_abs_entry(embedded_kraus(ps) - s) < 1e-15);

  CircuitDescription bad;
  bad.modes = {"L", "R"};
  bad.elements = {OpticalElement::beam_splitter(0.5, "L", "X")};
  bad.input_first = "L";
  bad.input_second = "R";
  CHECK_THROWS_AS(PhotonicCircuit{bad}, InvariantError);
}

TEST_CASE("tetrahedron bench") {
  const PhotonicCircuit c = build_tetrahedron_bench();
  CHECK(unitarity_residual(circuit_unitary(c)) < 1e-10);
  const auto ports = port_kraus(c);
  REQUIRE(ports.size() == 2);
  const KrausSet k = kraus_first_stage_d2();
  CHECK(phase_invariant_distance(ports[0].kraus, k[0]) < 1e-12);
  CHECK(phase_invariant_distance(ports[1].kraus, k[1]) < 1e-12);
  const double t1 = std::sqrt(0.5 - 1.0 / std::sqrt(12.0));
  CHECK(t1 == doctest::Approx(0.459701).epsilon(1e-6));
  CHECK(std::abs(std::abs(ports[0].kraus(0, 0)) - 0.459701) < 1e-6);
  CHECK(std::abs(std::abs(ports[0].kraus(1, 1)) - 0.888074) < 1e-6);

  const Pom pom = detection_pom(c);
  REQUIRE(pom.size() == 4);
  CHECK(pom.completeness_residual() < 1e-12);
  CHECK(validate_sic(pom, 1e-12).passed());
  // Effects are (1 + v.sigma)/4 with unit tetrahedral v.
  for (std::size_t i = 0; i < 4; ++i) {
    const BlochVector v = bloch_vector_of(pom[i].matrix());
    const Matrix rebuilt = 0.25 * (identity(2) + v.x * pauli(1) + v.y * pauli(2) + v.z * pauli(3));
    CHECK(max_abs_entry(rebuilt - pom[i].matrix()) < 1e-12);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(v.dot(bloch_vector_of(pom[j].matrix())) + 1.0 / 3) < 1e-10);
  }
}

TEST_CASE("first-stage bench parameters") {
  const FirstStageParameters p = first_stage_parameters();
  const double n = sic_norm();
  CHECK(p.r1 == doctest::Approx(1.0 / n).epsilon(1e-15));
  CHECK(p.r2 == doctest::Approx(1.0 / std::sqrt(n * n - 1)).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(1.0 / std::sqrt(n * n - 2)).epsilon(1e-15));
  CHECK(std::abs(p.r1 - 0.371748) < 1e-6);
  CHECK(std::abs(p.r2 - 0.400447) < 1e-6);
  CHECK(std::abs(p.y - 0.437016) < 1e-6);
  CHECK(std::abs(p.t1() * p.r2 - 1.0 / n) < 1e-12);
  CHECK(std::abs(p.t1() * p.t2() * p.y - 1.0 / n) < 1e-12);
  CHECK(std::abs(p.t1() * p.t2() * std::sqrt(1 - p.y * p.y) - sic_chi() / n) < 1e-12);
  CHECK(std::abs(sic_chi() / n - 0.765121) < 1e-6);
}

TEST_CASE("first-stage bench realizes the diagonal Kraus operators") {
  const PhotonicCircuit c = build_first_stage_bench_d4();
  CHECK(unitarity_residual(circuit_unitary(c)) < 1e-10);
  const auto ports = port_kraus(c);
  REQUIRE(ports.size() == 4);
  const KrausSet k = kraus_first_stage_d4();
  Matrix sum = Matrix::Zero(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    sum += ports[j].kraus.adjoint() * ports[j].kraus;
    CHECK(phase_invariant_distance(ports[j].kraus, k[j]) < 1e-10);
    // Column actions agree up to phase as kets.
    for (Index col = 0; col < 4; ++col) {
      const Vector a = ports[j].kraus.col(col);
      const Vector b = k[j].col(col);
      CHECK(oracle::projector_distance(a / a.norm(), b / b.norm()) < 1e-10);
    }
  }
  CHECK(max_abs_entry(sum - identity(4)) < 1e-10);
}

TEST_CASE("basis circuits") {
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const PhotonicCircuit c = build_basis_circuit(k);
    CHECK(phase_invariant_distance(embedded_kraus(c), mub_unitary(k)) < 1e-12);
    CHECK(c.count_entangling() == (k <= 2 ? 0u : 1u));
  }
  CHECK(max_abs_entry(embedded_kraus(build_basis_circuit(1)) - oracle::kron(hadamard(), hadamard())) < 1e-12);
  CHECK_THROWS(build_basis_circuit(0));
}

TEST_CASE("full bench") {
  const Pom pom = full_bench_pom();
  REQUIRE(pom.size() == 16);
  CHECK(validate_sic(pom, 1e-10).passed());
  const MatchReport m = match_to_sic(pom, fiducial_kets(), 1e-10);
  CHECK(m.passed);
  CHECK(m.max_distance < 1e-10);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  for (const auto& e : pom.effects()) CHECK(std::abs(born_probability(mixed, e) - 1.0 / 16) < 1e-12);
  CHECK(unitarity_residual(circuit_unitary(build_full_bench())) < 1e-10);
}

TEST_CASE("phase perturbation") {
  const PhotonicCircuit bench = build_full_bench();
  const Pom ideal = detection_pom(bench);
  const PhotonicCircuit same = perturb_phases(bench, 0.0, 1);
  const Pom p0 = detection_pom(same);
  for (std::size_t j = 0; j < 16; ++j) CHECK(max_abs_entry(p0[j].matrix() - ideal[j].matrix()) == 0.0);

  auto mean_deviation = [&](double sigma) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PhotonicCircuit c = perturb_phases(bench, sigma, seed);
      CHECK(unitarity_residual(circuit_unitary(c)) < 1e-10);
      const Pom p = detection_pom(c);
      double worst = 0.0;
      for (std::size_t j = 0; j < 16; ++j) worst = std::max(worst, (p[j].matrix() - ideal[j].matrix()).norm());
      total += worst;
    }
    return total / 100.0;
  };
  const double d0 = mean_deviation(0.0);
  const double d1 = mean_deviation(0.01);
  const double d2 = mean_deviation(0.1);
  CHECK(d0 == 0.0);
  CHECK(d1 > d0);
  CHECK(d2 > d1);
  // Small-angle regime: deviation roughly linear in sigma.
  CHECK(d2 / d1 > 5.0);
  CHECK(d2 / d1 < 20.0);
}

TEST_CASE("circuit JSON round trip") {
  for (const PhotonicCircuit& c : {build_tetrahedron_bench(), build_first_stage_bench_d4(), build_basis_circuit(3),
                                   build_full_bench()}) {
    const PhotonicCircuit back = circuit_from_json(Json::parse(circuit_to_json(c).dump()));
    CHECK(max_abs_entry(circuit_unitary(back) - circuit_unitary(c)) == 0.0);
    CHECK(back.description().ports.size() == c.description().ports.size());
    CHECK(back.description().detectors.size() == c.description().detectors.size());
  }
  Json j = circuit_to_json(build_basis_circuit(1));
  j["elements"][0]["kind"] = "LASER";
  CHECK_THROWS(circuit_from_json(j));
}
