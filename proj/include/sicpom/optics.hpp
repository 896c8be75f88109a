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

namespace sicpom {

// Single-photon linear optics. The global space is spanned by
// (polarization, spatial mode) amplitudes, polarization major:
// index = pol * n_modes + mode with pol 0 = v, 1 = h. A qubit pair carried by
// modes (first, second) uses the ordering |v,first>, |v,second>, |h,first>,
// |h,second>, i.e. polarization is the most significant tensor factor.

enum class ElementKind { BeamSplitter, PartiallyPolarizingBeamSplitter, HalfWavePlate, PhaseShifter, ControlledZ };

enum class Polarization { Both, Vertical, Horizontal };

std::string to_string(ElementKind kind);
std::string to_string(Polarization pol);
ElementKind element_kind_from_string(const std::string& s);
Polarization polarization_from_string(const std::string& s);

/// One optical element acting on named spatial modes.
///
///  - BeamSplitter(r) on (a, b): [[r, t], [t, -r]] for each polarization,
///    t = sqrt(1 - r^2). A photon entering `a` stays in `a` with amplitude r.
///  - PartiallyPolarizingBeamSplitter(r_v, r_h) on (a, b): v block
///    [[r_v, t_v], [-t_v, r_v]], h block [[r_h, t_h], [t_h, -r_h]].
///    r_v = 1, r_h = 0 is a PBS, r_v = r_h = 1 is CZ.
///  - HalfWavePlate(angle) on one or more modes: [[cos 2a, sin 2a],
///    [sin 2a, -cos 2a]] on (v, h) of each mode; angle pi/8 gives Hadamard.
///  - PhaseShifter(phase, pol) on one or more modes: e^{i phase} on the
///    selected polarization component(s).
///  - ControlledZ on (a, b): -1 on |h, b>.
struct OpticalElement {
  ElementKind kind = ElementKind::BeamSplitter;
  std::vector<std::string> modes;
  double reflectivity = 0.0;
  double reflectivity_v = 0.0;
  double reflectivity_h = 0.0;
  double angle = 0.0;
  double phase = 0.0;
  Polarization polarization = Polarization::Both;
  std::string label;

  static OpticalElement beam_splitter(double r, std::string a, std::string b, std::string label = {});
  static OpticalElement ppbs(double r_v, double r_h, std::string a, std::string b, std::string label = {});
  static OpticalElement half_wave_plate(double angle, std::vector<std::string> modes, std::string label = {});
  static OpticalElement phase_shifter(double phase, std::vector<std::string> modes,
                                      Polarization pol = Polarization::Both, std::string label = {});
  static OpticalElement controlled_z(std::string a, std::string b, std::string label = {});

  /// True for elements whose action couples polarization and path.
  bool is_entangling() const;
  /// Throws InvariantError on out-of-range coefficients or a wrong mode count.
  void validate() const;
};

/// Local unitary of an element on its own modes, in the polarization-major
/// ordering over element.modes. 2 modes -> 4x4, n modes -> 2n x 2n.
Matrix element_unitary(const OpticalElement& e);

/// Inverse element; throws InvariantError for a PPBS with 0 < t_v (no
/// inverse within the element set).
OpticalElement inverse(const OpticalElement& e);

enum class Encoding {
  Path,              // qubit in (first, second) spatial modes, v polarization
  PathPolarization,  // qubit pair: polarization x path
};

struct Port {
  std::string label;
  std::string first;
  std::string second;
};

/// Photodetector on one spatial mode (both polarizations), reporting outcome
/// (port, result).
struct Detector {
  std::string mode;
  int port = 0;
  int result = 0;
};

/// Plain description of a circuit; PhotonicCircuit validates it.
struct CircuitDescription {
  std::string name;
  Encoding encoding = Encoding::PathPolarization;
  std::vector<std::string> modes;
  std::vector<OpticalElement> elements;
  std::string input_first;
  std::string input_second;
  /// Number of leading elements forming the first measurement; ports are
  /// read off after these elements.
  std::size_t first_stage_size = 0;
  std::vector<Port> ports;
  std::vector<Detector> detectors;
};

class PhotonicCircuit {
 public:
  /// Throws InvariantError when an element references an undeclared mode,
  /// labels repeat, or ports/detectors reference unknown modes.
  explicit PhotonicCircuit(CircuitDescription d);

  const CircuitDescription& description() const { return d_; }
  const std::string& name() const { return d_.name; }
  Encoding encoding() const { return d_.encoding; }
  std::size_t mode_count() const { return d_.modes.size(); }
  Index global_dim() const { return static_cast<Index>(2 * d_.modes.size()); }
  Index qubit_dim() const { return d_.encoding == Encoding::Path ? 2 : 4; }
  std::size_t mode_index(const std::string& label) const;
  Index global_index(const std::string& mode, int pol) const;
  /// Global indices of the qubit basis carried by (first, second).
  std::vector<Index> qubit_indices(const std::string& first, const std::string& second) const;
  std::size_t count_entangling() const;

 private:
  CircuitDescription d_;
};

/// Product of the embedded element unitaries (last element leftmost).
Matrix circuit_unitary(const PhotonicCircuit& c);
/// Same for the first `count` elements only.
Matrix stage_unitary(const PhotonicCircuit& c, std::size_t count);

struct PortKraus {
  std::string label;
  Matrix kraus;
};

/// Kraus operator of each port: the first-stage unitary restricted to
/// (input qubit subspace -> port qubit subspace). Throws InvariantError when
/// ports overlap or do not collect all amplitude (completeness 1e-10).
std::vector<PortKraus> port_kraus(const PhotonicCircuit& c);

/// POM of the detectors after the whole circuit, in lexicographic
/// (port, result) order. Throws InvariantError when detectors miss amplitude.
Pom detection_pom(const PhotonicCircuit& c);

/// Path-qubit tetrahedron measurement: BS1/BS2 first stage, sigma_x analyzer
/// on port 1, sigma_y analyzer on port 2.
PhotonicCircuit build_tetrahedron_bench();

/// Reflectivities of the two-qubit first stage.
struct FirstStageParameters {
  double r1 = 0.0;
  double r2 = 0.0;
  double y = 0.0;
  double t1() const;
  double t2() const;
};
FirstStageParameters first_stage_parameters();

/// Polarization-path first stage: BS1a/BS2a/PPBSa on the L chain and
/// BS1b/BS2b/PPBSb on the R chain; four ports realizing the diagonal Kraus
/// operators of the two-qubit SIC.
PhotonicCircuit build_first_stage_bench_d4();

/// U_k on modes (L, R) from Hadamards (HWP at pi/8, balanced BS), pi/2
/// phase shifters and, for k = 3, 4, one CZ realized as PPBS(1, 1).
PhotonicCircuit build_basis_circuit(int k);

/// First stage, the four U_k^dagger analyzers and PBS-split detection.
PhotonicCircuit build_full_bench();
Pom full_bench_pom();

/// Inserts a PS(delta) on both output modes after every BS/PPBS/CZ, delta
/// drawn independently from N(0, sigma^2). sigma = 0 returns the circuit
/// unchanged.
PhotonicCircuit perturb_phases(const PhotonicCircuit& c, double sigma, std::uint64_t seed);

}  // namespace sicpom
