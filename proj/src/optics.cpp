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

#include "sicpom/optics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "sicpom/errors.hpp"
#include "sicpom/random.hpp"
#include "sicpom/sic.hpp"

namespace sicpom {

namespace {

constexpr double kPi = std::numbers::pi;

double complement(double r) { return std::sqrt(std::max(0.0, 1.0 - r * r)); }

void require_coefficient(double r, const char* name, const std::string& label) {
  if (!(r >= 0.0 && r <= 1.0)) {
    std::ostringstream msg;
    msg << "optical element " << label << ": " << name << " = " << r << " outside [0, 1]";
    throw InvariantError(msg.str());
  }
}

Matrix two_by_two(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::BeamSplitter: return "BS";
    case ElementKind::PartiallyPolarizingBeamSplitter: return "PPBS";
    case ElementKind::HalfWavePlate: return "HWP";
    case ElementKind::PhaseShifter: return "PS";
    case ElementKind::ControlledZ: return "CZ";
  }
  return "?";
}

std::string to_string(Polarization pol) {
  switch (pol) {
    case Polarization::Both: return "both";
    case Polarization::Vertical: return "v";
    case Polarization::Horizontal: return "h";
  }
  return "?";
}

ElementKind element_kind_from_string(const std::string& s) {
  if (s == "BS") return ElementKind::BeamSplitter;
  if (s == "PPBS") return ElementKind::PartiallyPolarizingBeamSplitter;
  if (s == "HWP") return ElementKind::HalfWavePlate;
  if (s == "PS") return ElementKind::PhaseShifter;
  if (s == "CZ") return ElementKind::ControlledZ;
  throw ConfigError("unknown optical element kind '" + s + "'");
}

Polarization polarization_from_string(const std::string& s) {
  if (s == "both") return Polarization::Both;
  if (s == "v") return Polarization::Vertical;
  if (s == "h") return Polarization::Horizontal;
  throw ConfigError("unknown polarization selector '" + s + "' (expected both, v or h)");
}

OpticalElement OpticalElement::beam_splitter(double r, std::string a, std::string b, std::string label) {
  OpticalElement e;
  e.kind = ElementKind::BeamSplitter;
  e.modes = {std::move(a), std::move(b)};
  e.reflectivity = r;
  e.label = std::move(label);
  e.validate();
  return e;
}

OpticalElement OpticalElement::ppbs(double r_v, double r_h, std::string a, std::string b, std::string label) {
  OpticalElement e;
  e.kind = ElementKind::PartiallyPolarizingBeamSplitter;
  e.modes = {std::move(a), std::move(b)};
  e.reflectivity_v = r_v;
  e.reflectivity_h = r_h;
  e.label = std::move(label);
  e.validate();
  return e;
}

OpticalElement OpticalElement::half_wave_plate(double angle, std::vector<std::string> modes, std::string label) {
  OpticalElement e;
  e.kind = ElementKind::HalfWavePlate;
  e.modes = std::move(modes);
  e.angle = angle;
  e.label = std::move(label);
  e.validate();
  return e;
}

OpticalElement OpticalElement::phase_shifter(double phase, std::vector<std::string> modes,
                                             Polarization pol, std::string label) {
  OpticalElement e;
  e.kind = ElementKind::PhaseShifter;
  e.modes = std::move(modes);
  e.phase = phase;
  e.polarization = pol;
  e.label = std::move(label);
  e.validate();
  return e;
}

OpticalElement OpticalElement::controlled_z(std::string a, std::string b, std::string label) {
  OpticalElement e;
  e.kind = ElementKind::ControlledZ;
  e.modes = {std::move(a), std::move(b)};
  e.label = std::move(label);
  e.validate();
  return e;
}

bool OpticalElement::is_entangling() const {
  return kind == ElementKind::ControlledZ || kind == ElementKind::PartiallyPolarizingBeamSplitter;
}

void OpticalElement::validate() const {
  const std::string name = label.empty() ? to_string(kind) : label;
  std::set<std::string> unique(modes.begin(), modes.end());
  if (unique.size() != modes.size()) throw InvariantError("optical element " + name + ": repeated mode");
  switch (kind) {
    case ElementKind::BeamSplitter:
    case ElementKind::PartiallyPolarizingBeamSplitter:
    case ElementKind::ControlledZ:
      if (modes.size() != 2) throw InvariantError("optical element " + name + ": needs exactly two modes");
      break;
    case ElementKind::HalfWavePlate:
    case ElementKind::PhaseShifter:
      if (modes.empty()) throw InvariantError("optical element " + name + ": needs at least one mode");
      break;
  }
  if (kind == ElementKind::BeamSplitter) require_coefficient(reflectivity, "r", name);
  if (kind == ElementKind::PartiallyPolarizingBeamSplitter) {
    require_coefficient(reflectivity_v, "r_v", name);
    require_coefficient(reflectivity_h, "r_h", name);
  }
  if (!std::isfinite(angle) || !std::isfinite(phase)) {
    throw InvariantError("optical element " + name + ": non-finite parameter");
  }
}

Matrix element_unitary(const OpticalElement& e) {
  e.validate();
  switch (e.kind) {
    case ElementKind::BeamSplitter: {
      const double r = e.reflectivity;
      const double t = complement(r);
      const Matrix b = two_by_two(r, t, t, -r);
      return block_diag(b, b);
    }
    case ElementKind::PartiallyPolarizingBeamSplitter: {
      const double rv = e.reflectivity_v;
      const double tv = complement(rv);
      const double rh = e.reflectivity_h;
      const double th = complement(rh);
      return block_diag(two_by_two(rv, tv, -tv, rv), two_by_two(rh, th, th, -rh));
    }
    case ElementKind::HalfWavePlate: {
      const Index n = static_cast<Index>(e.modes.size());
      const double c = std::cos(2.0 * e.angle);
      const double s = std::sin(2.0 * e.angle);
      Matrix u(2 * n, 2 * n);
      u << c * identity(n), s * identity(n), s * identity(n), -c * identity(n);
      return u;
    }
    case ElementKind::PhaseShifter: {
      const Index n = static_cast<Index>(e.modes.size());
      const cplx shift = std::polar(1.0, e.phase);
      Vector diag = Vector::Ones(2 * n);
      if (e.polarization != Polarization::Horizontal) diag.head(n).setConstant(shift);
      if (e.polarization != Polarization::Vertical) diag.tail(n).setConstant(shift);
      return diag.asDiagonal();
    }
    case ElementKind::ControlledZ: {
      Vector diag = Vector::Ones(4);
      diag(3) = -1.0;
      return diag.asDiagonal();
    }
  }
  throw InvariantError("element_unitary: unknown element kind");
}

OpticalElement inverse(const OpticalElement& e) {
  OpticalElement inv = e;
  switch (e.kind) {
    case ElementKind::PhaseShifter:
      inv.phase = -e.phase;
      break;
    case ElementKind::PartiallyPolarizingBeamSplitter:
      // The v block [[r, t], [-t, r]] is a rotation; only t_v = 0 is an involution.
      if (complement(e.reflectivity_v) != 0.0) {
        throw InvariantError("inverse: PPBS " + e.label + " with partial v transmission has no inverse element");
      }
      break;
    default:
      break;  // real symmetric orthogonal: self-inverse
  }
  return inv;
}

PhotonicCircuit::PhotonicCircuit(CircuitDescription d) : d_(std::move(d)) {
  std::set<std::string> declared;
  for (const auto& m : d_.modes) {
    if (m.empty() || !declared.insert(m).second) {
      throw InvariantError("circuit " + d_.name + ": mode labels must be nonempty and unique");
    }
  }
  auto require_mode = [&](const std::string& m, const std::string& where) {
    if (!declared.count(m)) throw InvariantError("circuit " + d_.name + ": " + where + " references undeclared mode '" + m + "'");
  };
  for (const auto& e : d_.elements) {
    e.validate();
    for (const auto& m : e.modes) require_mode(m, "element " + (e.label.empty() ? to_string(e.kind) : e.label));
  }
  require_mode(d_.input_first, "input");
  require_mode(d_.input_second, "input");
  if (d_.input_first == d_.input_second) throw InvariantError("circuit " + d_.name + ": input modes must differ");
  if (d_.first_stage_size > d_.elements.size()) {
    throw InvariantError("circuit " + d_.name + ": first stage longer than the element list");
  }
  std::set<std::string> port_modes;
  for (const auto& p : d_.ports) {
    require_mode(p.first, "port " + p.label);
    require_mode(p.second, "port " + p.label);
    if (!port_modes.insert(p.first).second || !port_modes.insert(p.second).second) {
      throw InvariantError("circuit " + d_.name + ": ports do not partition the output modes (mode shared)");
    }
  }
  std::set<std::string> det_modes;
  std::set<std::pair<int, int>> det_labels;
  for (const auto& det : d_.detectors) {
    require_mode(det.mode, "detector");
    if (det.port < 1 || det.result < 1) throw InvariantError("circuit " + d_.name + ": detector labels are 1-based");
    if (!det_modes.insert(det.mode).second || !det_labels.insert({det.port, det.result}).second) {
      throw InvariantError("circuit " + d_.name + ": duplicate detector");
    }
  }
}

std::size_t PhotonicCircuit::mode_index(const std::string& label) const {
  auto it = std::find(d_.modes.begin(), d_.modes.end(), label);
  if (it == d_.modes.end()) throw InvariantError("circuit " + d_.name + ": unknown mode '" + label + "'");
  return static_cast<std::size_t>(it - d_.modes.begin());
}

Index PhotonicCircuit::global_index(const std::string& mode, int pol) const {
  return static_cast<Index>(pol * d_.modes.size() + mode_index(mode));
}

std::vector<Index> PhotonicCircuit::qubit_indices(const std::string& first, const std::string& second) const {
  std::vector<Index> idx{global_index(first, 0), global_index(second, 0)};
  if (d_.encoding == Encoding::PathPolarization) {
    idx.push_back(global_index(first, 1));
    idx.push_back(global_index(second, 1));
  }
  return idx;
}

std::size_t PhotonicCircuit::count_entangling() const {
  return static_cast<std::size_t>(
      std::count_if(d_.elements.begin(), d_.elements.end(), [](const OpticalElement& e) { return e.is_entangling(); }));
}

Matrix stage_unitary(const PhotonicCircuit& c, std::size_t count) {
  const auto& elements = c.description().elements;
  if (count > elements.size()) throw InvariantError("stage_unitary: more elements requested than present");
  Matrix total = identity(c.global_dim());
  for (std::size_t k = 0; k < count; ++k) {
    const OpticalElement& e = elements[k];
    std::vector<Index> idx;
    for (int pol = 0; pol < 2; ++pol) {
      for (const auto& m : e.modes) idx.push_back(c.global_index(m, pol));
    }
    const Matrix local = element_unitary(e);
    const Matrix rows = total(idx, Eigen::all);
    total(idx, Eigen::all) = local * rows;
  }
  return total;
}

Matrix circuit_unitary(const PhotonicCircuit& c) {
  return stage_unitary(c, c.description().elements.size());
}

std::vector<PortKraus> port_kraus(const PhotonicCircuit& c) {
  const auto& d = c.description();
  if (d.ports.empty()) throw InvariantError("port_kraus: circuit " + d.name + " declares no ports");
  const Matrix u = stage_unitary(c, d.first_stage_size);
  const std::vector<Index> cols = c.qubit_indices(d.input_first, d.input_second);
  std::vector<PortKraus> out;
  std::vector<Matrix> effects;
  for (const auto& p : d.ports) {
    Matrix k = u(c.qubit_indices(p.first, p.second), cols);
    effects.push_back(k.adjoint() * k);
    out.push_back({p.label, std::move(k)});
  }
  const double residual = completeness_residual(effects);
  if (!(residual <= kCompletenessTol)) {
    std::ostringstream msg;
    msg << "port_kraus: ports of " << d.name << " do not partition the output amplitude (completeness residual "
        << residual << ")";
    throw InvariantError(msg.str());
  }
  return out;
}

Pom detection_pom(const PhotonicCircuit& c) {
  const auto& d = c.description();
  if (d.detectors.empty()) throw InvariantError("detection_pom: circuit " + d.name + " has no detectors");
  const Matrix u = circuit_unitary(c);
  const std::vector<Index> cols = c.qubit_indices(d.input_first, d.input_second);
  std::vector<Detector> detectors = d.detectors;
  std::sort(detectors.begin(), detectors.end(),
            [](const Detector& a, const Detector& b) { return std::pair(a.port, a.result) < std::pair(b.port, b.result); });
  std::vector<Matrix> ms;
  for (const auto& det : detectors) {
    Matrix e = Matrix::Zero(c.qubit_dim(), c.qubit_dim());
    for (int pol = 0; pol < 2; ++pol) {
      const Matrix row = u(std::vector<Index>{c.global_index(det.mode, pol)}, cols);
      e += row.adjoint() * row;
    }
    ms.push_back(0.5 * (e + e.adjoint()));
  }
  const double residual = completeness_residual(ms);
  if (!(residual <= kCompletenessTol)) {
    std::ostringstream msg;
    msg << "detection_pom: detectors of " << d.name << " miss amplitude (completeness residual " << residual << ")";
    throw InvariantError(msg.str());
  }
  std::vector<Effect> effects;
  for (std::size_t j = 0; j < detectors.size(); ++j) {
    effects.emplace_back(std::move(ms[j]),
                         "(" + std::to_string(detectors[j].port) + "," + std::to_string(detectors[j].result) + ")");
  }
  return Pom(std::move(effects));
}

PhotonicCircuit build_tetrahedron_bench() {
  const double small = std::sqrt(0.5 - 1.0 / std::sqrt(12.0));
  const double large = std::sqrt(0.5 + 1.0 / std::sqrt(12.0));
  const double balanced = 1.0 / std::sqrt(2.0);
  CircuitDescription d;
  d.name = "tetrahedron";
  d.encoding = Encoding::Path;
  d.modes = {"L", "R", "T1", "T2"};
  d.input_first = "L";
  d.input_second = "R";
  // BS1: t1 = small, r1 = large; BS2: t2 = large, r2 = small.
  d.elements.push_back(OpticalElement::beam_splitter(large, "L", "T1", "BS1"));
  d.elements.push_back(OpticalElement::beam_splitter(small, "R", "T2", "BS2"));
  d.first_stage_size = d.elements.size();
  d.ports = {{"1", "T1", "T2"}, {"2", "L", "R"}};
  // sigma_x analyzer on port 1, sigma_y analyzer on port 2.
  d.elements.push_back(OpticalElement::beam_splitter(balanced, "T1", "T2", "BS3"));
  d.elements.push_back(OpticalElement::phase_shifter(-kPi / 2.0, {"R"}, Polarization::Both, "PS"));
  d.elements.push_back(OpticalElement::beam_splitter(balanced, "L", "R", "BS4"));
  d.detectors = {{"T1", 1, 1}, {"T2", 1, 2}, {"L", 2, 1}, {"R", 2, 2}};
  return PhotonicCircuit(std::move(d));
}

double FirstStageParameters::t1() const { return complement(r1); }
double FirstStageParameters::t2() const { return complement(r2); }

FirstStageParameters first_stage_parameters() {
  const double n2 = 5.0 + std::sqrt(5.0);
  return {1.0 / std::sqrt(n2), 1.0 / std::sqrt(n2 - 1.0), 1.0 / std::sqrt(n2 - 2.0)};
}

namespace {

void append_first_stage_d4(CircuitDescription& d) {
  const FirstStageParameters p = first_stage_parameters();
  const double r_h = complement(p.y);  // r_v = t_h = y
  for (const char* m : {"L", "R", "A1", "A2", "A3", "B1", "B2", "B3"}) d.modes.push_back(m);
  d.input_first = "L";
  d.input_second = "R";
  d.elements.push_back(OpticalElement::beam_splitter(p.r1, "L", "A1", "BS1a"));
  d.elements.push_back(OpticalElement::beam_splitter(p.r1, "R", "B1", "BS1b"));
  d.elements.push_back(OpticalElement::beam_splitter(p.r2, "A1", "A2", "BS2a"));
  d.elements.push_back(OpticalElement::beam_splitter(p.r2, "B1", "B2", "BS2b"));
  d.elements.push_back(OpticalElement::ppbs(p.y, r_h, "A2", "A3", "PPBSa"));
  d.elements.push_back(OpticalElement::ppbs(p.y, r_h, "B2", "B3", "PPBSb"));
  // The PPBS v block sends -t_v into the transmitted arm; flip it back so the
  // port Kraus operators carry no relative v/h sign.
  d.elements.push_back(OpticalElement::phase_shifter(kPi, {"A3"}, Polarization::Vertical, "PSa"));
  d.elements.push_back(OpticalElement::phase_shifter(kPi, {"B3"}, Polarization::Vertical, "PSb"));
  d.first_stage_size = d.elements.size();
  d.ports = {{"1", "A3", "R"}, {"2", "L", "B3"}, {"3", "A2", "B1"}, {"4", "A1", "B2"}};
}

std::vector<OpticalElement> basis_elements(int k) {
  if (k < 1 || k > 4) throw DimensionError("build_basis_circuit: k must be in 1..4");
  const double balanced = 1.0 / std::sqrt(2.0);
  std::vector<OpticalElement> els;
  els.push_back(OpticalElement::half_wave_plate(kPi / 8.0, {"L", "R"}, "HWP"));
  if (k == 2 || k == 3) {
    els.push_back(OpticalElement::phase_shifter(kPi / 2.0, {"L", "R"}, Polarization::Horizontal, "PS_pol"));
  }
  els.push_back(OpticalElement::beam_splitter(balanced, "L", "R", "BS"));
  if (k == 2 || k == 4) {
    els.push_back(OpticalElement::phase_shifter(kPi / 2.0, {"R"}, Polarization::Both, "PS_path"));
  }
  if (k == 3 || k == 4) els.push_back(OpticalElement::ppbs(1.0, 1.0, "L", "R", "CZ"));
  return els;
}

}  // namespace

PhotonicCircuit build_first_stage_bench_d4() {
  CircuitDescription d;
  d.name = "first-stage";
  d.encoding = Encoding::PathPolarization;
  append_first_stage_d4(d);
  return PhotonicCircuit(std::move(d));
}

PhotonicCircuit build_basis_circuit(int k) {
  CircuitDescription d;
  d.name = "basis" + std::to_string(k);
  d.encoding = Encoding::PathPolarization;
  d.modes = {"L", "R"};
  d.input_first = "L";
  d.input_second = "R";
  d.elements = basis_elements(k);
  d.first_stage_size = d.elements.size();
  d.ports = {{"out", "L", "R"}};
  return PhotonicCircuit(std::move(d));
}

PhotonicCircuit build_full_bench() {
  CircuitDescription d;
  d.name = "full";
  d.encoding = Encoding::PathPolarization;
  append_first_stage_d4(d);
  const std::vector<Port> ports = d.ports;
  for (int k = 1; k <= 4; ++k) {
    const Port& port = ports[k - 1];
    const std::string tag = std::to_string(k);
    std::map<std::string, std::string> relabel{{"L", port.first}, {"R", port.second}};
    // Analyzer U_k^dagger: reversed element order, each element inverted.
    auto els = basis_elements(k);
    for (auto it = els.rbegin(); it != els.rend(); ++it) {
      OpticalElement e = inverse(*it);
      for (auto& m : e.modes) m = relabel.at(m);
      e.label += "_" + tag;
      d.elements.push_back(std::move(e));
    }
    const std::string h_first = "D" + tag + "h1";
    const std::string h_second = "D" + tag + "h2";
    d.modes.push_back(h_first);
    d.modes.push_back(h_second);
    d.elements.push_back(OpticalElement::ppbs(1.0, 0.0, port.first, h_first, "PBS_" + tag + "a"));
    d.elements.push_back(OpticalElement::ppbs(1.0, 0.0, port.second, h_second, "PBS_" + tag + "b"));
    d.detectors.push_back({port.first, k, 1});
    d.detectors.push_back({port.second, k, 2});
    d.detectors.push_back({h_first, k, 3});
    d.detectors.push_back({h_second, k, 4});
  }
  return PhotonicCircuit(std::move(d));
}

Pom full_bench_pom() { return detection_pom(build_full_bench()); }

PhotonicCircuit perturb_phases(const PhotonicCircuit& c, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvariantError("perturb_phases: sigma must be non-negative");
  if (sigma == 0.0) return c;
  CircuitDescription d = c.description();
  const auto& original = c.description().elements;
  Rng rng(seed);
  d.elements.clear();
  std::size_t first_stage = 0;
  int drift = 0;
  for (std::size_t k = 0; k < original.size(); ++k) {
    const OpticalElement& e = original[k];
    d.elements.push_back(e);
    std::size_t added = 1;
    if (e.modes.size() == 2 && e.kind != ElementKind::PhaseShifter && e.kind != ElementKind::HalfWavePlate) {
      for (const auto& m : e.modes) {
        d.elements.push_back(OpticalElement::phase_shifter(sigma * rng.normal(), {m}, Polarization::Both,
                                                           "drift" + std::to_string(drift++)));
        ++added;
      }
    }
    if (k < c.description().first_stage_size) first_stage += added;
  }
  d.first_stage_size = first_stage;
  return PhotonicCircuit(std::move(d));
}

}  // namespace sicpom
