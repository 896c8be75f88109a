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

#include "sicpom/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "sicpom/errors.hpp"

namespace sicpom {

bool is_non_negative_integer(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& require_field(const Json& j, const char* field, const std::string& where) {
  if (!j.is_object() || !j.contains(field)) {
    throw ConfigError(where + ": missing field '" + field + "'");
  }
  return j.at(field);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw ConfigError("matrix: expected a nonempty array of rows");
  const Index n_rows = static_cast<Index>(rows.size());
  if (!rows[0].is_array()) throw ConfigError("matrix: row 0 is not an array");
  const Index n_cols = static_cast<Index>(rows[0].size());
  Matrix m(n_rows, n_cols);
  for (Index r = 0; r < n_rows; ++r) {
    if (!rows[r].is_array() || static_cast<Index>(rows[r].size()) != n_cols) {
      throw ConfigError("matrix: row " + std::to_string(r) + " has the wrong length");
    }
    for (Index c = 0; c < n_cols; ++c) {
      m(r, c) = complex_from_json(rows[r][c], "matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
  }
  return m;
}

DensityMatrix state_from_json(const Json& j) {
  const Json& dim_field = require_field(j, "dim", "state");
  if (!dim_field.is_number_integer()) throw ConfigError("state: 'dim' must be an integer");
  const long long dim = dim_field.get<long long>();
  if (!is_supported_dim(dim)) throw DimensionError("state: unsupported dim " + std::to_string(dim));
  const Json& kind_field = require_field(j, "kind", "state");
  if (!kind_field.is_string()) throw ConfigError("state: 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "pure") {
    const Json& amps = require_field(j, "amplitudes", "state");
    if (!amps.is_array() || static_cast<long long>(amps.size()) != dim) {
      throw ConfigError("state: 'amplitudes' must hold exactly dim entries");
    }
    Vector v(dim);
    for (long long i = 0; i < dim; ++i) v(i) = complex_from_json(amps[i], "state amplitude " + std::to_string(i));
    return DensityMatrix::pure(Ket(std::move(v)));
  }
  if (kind == "mixed") {
    Matrix m = matrix_from_json(require_field(j, "rows", "state"));
    if (m.rows() != dim || m.cols() != dim) throw ConfigError("state: 'rows' must be dim x dim");
    return DensityMatrix(std::move(m));
  }
  throw ConfigError("state: 'kind' must be \"pure\" or \"mixed\"");
}

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["kind"] = "mixed";
  j["rows"] = matrix_to_json(rho.matrix());
  return j;
}

Json ket_to_json(const Ket& k) {
  Json j;
  j["dim"] = k.dim();
  j["kind"] = "pure";
  Json amps = Json::array();
  for (Index i = 0; i < k.dim(); ++i) amps.push_back(complex_to_json(k[i]));
  j["amplitudes"] = std::move(amps);
  return j;
}

DensityMatrix load_state_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError("state file " + path + ": " + e.what());
  }
  return state_from_json(j);
}

std::string counts_to_csv(const CountRecord& rec) {
  std::ostringstream out;
  out << "port,result,count\n";
  for (std::size_t j = 0; j < rec.counts.size(); ++j) {
    out << rec.labels[j].port << ',' << rec.labels[j].result << ',' << rec.counts[j] << '\n';
  }
  return out.str();
}

CountRecord counts_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("counts: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "port,result,count") throw ConfigError("counts: header must be 'port,result,count'");
  CountRecord rec;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    int port = 0;
    int result = 0;
    unsigned long long count = 0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%llu%c", &port, &result, &count, &tail) != 3 || port < 1 || result < 1 ||
        line.find('-') != std::string::npos) {
      throw ConfigError("counts: malformed row at line " + std::to_string(line_no));
    }
    rec.labels.push_back({port, result});
    rec.counts.push_back(count);
    rec.shots += count;
  }
  const std::size_t n = rec.counts.size();
  if (n != 4 && n != 16) throw ConfigError("counts: expected 4 or 16 rows, got " + std::to_string(n));
  const int d = n == 4 ? 2 : 4;
  if (rec.labels != lexicographic_labels(d)) throw ConfigError("counts: rows must be in lexicographic (port,result) order");
  rec.pom_id = d == 4 ? "sic4" : "sic2";
  return rec;
}

Json counts_to_json(const CountRecord& rec) {
  Json j;
  j["pom"] = rec.pom_id;
  j["shots"] = rec.shots;
  Json rows = Json::array();
  for (std::size_t k = 0; k < rec.counts.size(); ++k) {
    Json row;
    row["port"] = rec.labels[k].port;
    row["result"] = rec.labels[k].result;
    row["count"] = rec.counts[k];
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

CountRecord counts_from_json(const Json& j) {
  CountRecord rec;
  if (j.contains("pom") && j["pom"].is_string()) rec.pom_id = j["pom"].get<std::string>();
  const Json& rows = require_field(j, "counts", "counts");
  if (!rows.is_array()) throw ConfigError("counts: 'counts' must be an array");
  for (const auto& row : rows) {
    const Json& port = require_field(row, "port", "counts row");
    const Json& result = require_field(row, "result", "counts row");
    const Json& count = require_field(row, "count", "counts row");
    if (!port.is_number_integer() || !result.is_number_integer() || !is_non_negative_integer(count)) {
      throw ConfigError("counts row: port/result must be integers and count a non-negative integer");
    }
    rec.labels.push_back({port.get<int>(), result.get<int>()});
    rec.counts.push_back(count.get<std::uint64_t>());
  }
  const Json& shots = require_field(j, "shots", "counts");
  if (!is_non_negative_integer(shots)) throw ConfigError("counts: 'shots' must be a non-negative integer");
  rec.shots = shots.get<std::uint64_t>();
  rec.validate();
  return rec;
}

CountRecord load_counts_file(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return counts_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
      throw ConfigError("counts file " + path + ": " + e.what());
    }
  }
  return counts_from_csv(text);
}

Json circuit_to_json(const PhotonicCircuit& c) {
  const auto& d = c.description();
  Json j;
  j["name"] = d.name;
  j["encoding"] = d.encoding == Encoding::Path ? "path" : "path-polarization";
  j["modes"] = d.modes;
  Json els = Json::array();
  for (const auto& e : d.elements) {
    Json je;
    je["kind"] = to_string(e.kind);
    if (!e.label.empty()) je["label"] = e.label;
    je["modes"] = e.modes;
    switch (e.kind) {
      case ElementKind::BeamSplitter:
        je["r"] = e.reflectivity;
        break;
      case ElementKind::PartiallyPolarizingBeamSplitter:
        je["r_v"] = e.reflectivity_v;
        je["r_h"] = e.reflectivity_h;
        break;
      case ElementKind::HalfWavePlate:
        je["angle"] = e.angle;
        break;
      case ElementKind::PhaseShifter:
        je["phase"] = e.phase;
        je["polarization"] = to_string(e.polarization);
        break;
      case ElementKind::ControlledZ:
        break;
    }
    els.push_back(std::move(je));
  }
  j["elements"] = std::move(els);
  j["input"] = Json::array({d.input_first, d.input_second});
  j["first_stage_size"] = d.first_stage_size;
  Json ports = Json::array();
  for (const auto& p : d.ports) {
    Json jp;
    jp["label"] = p.label;
    jp["modes"] = Json::array({p.first, p.second});
    ports.push_back(std::move(jp));
  }
  j["ports"] = std::move(ports);
  Json dets = Json::array();
  for (const auto& det : d.detectors) {
    Json jd;
    jd["mode"] = det.mode;
    jd["port"] = det.port;
    jd["result"] = det.result;
    dets.push_back(std::move(jd));
  }
  j["detectors"] = std::move(dets);
  return j;
}

PhotonicCircuit circuit_from_json(const Json& j) {
  try {
    CircuitDescription d;
    d.name = j.value("name", std::string("circuit"));
    const std::string enc = j.value("encoding", std::string("path-polarization"));
    if (enc == "path") {
      d.encoding = Encoding::Path;
    } else if (enc == "path-polarization") {
      d.encoding = Encoding::PathPolarization;
    } else {
      throw ConfigError("circuit: encoding must be \"path\" or \"path-polarization\"");
    }
    d.modes = require_field(j, "modes", "circuit").get<std::vector<std::string>>();
    for (const auto& je : require_field(j, "elements", "circuit")) {
      OpticalElement e;
      e.kind = element_kind_from_string(require_field(je, "kind", "circuit element").get<std::string>());
      e.modes = require_field(je, "modes", "circuit element").get<std::vector<std::string>>();
      e.label = je.value("label", std::string());
      e.reflectivity = je.value("r", 0.0);
      e.reflectivity_v = je.value("r_v", 0.0);
      e.reflectivity_h = je.value("r_h", 0.0);
      e.angle = je.value("angle", 0.0);
      e.phase = je.value("phase", 0.0);
      e.polarization = polarization_from_string(je.value("polarization", std::string("both")));
      d.elements.push_back(std::move(e));
    }
    const auto input = require_field(j, "input", "circuit").get<std::vector<std::string>>();
    if (input.size() != 2) throw ConfigError("circuit: 'input' must name two modes");
    d.input_first = input[0];
    d.input_second = input[1];
    d.first_stage_size = j.value("first_stage_size", d.elements.size());
    if (j.contains("ports")) {
      for (const auto& jp : j["ports"]) {
        const auto modes = require_field(jp, "modes", "circuit port").get<std::vector<std::string>>();
        if (modes.size() != 2) throw ConfigError("circuit port: 'modes' must name two modes");
        d.ports.push_back({jp.value("label", std::string()), modes[0], modes[1]});
      }
    }
    if (j.contains("detectors")) {
      for (const auto& jd : j["detectors"]) {
        d.detectors.push_back({require_field(jd, "mode", "circuit detector").get<std::string>(),
                               require_field(jd, "port", "circuit detector").get<int>(),
                               require_field(jd, "result", "circuit detector").get<int>()});
      }
    }
    return PhotonicCircuit(std::move(d));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
}

Json reconstruction_to_json(const ReconstructionResult& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["estimate"] = matrix_to_json(r.estimate);
  j["physical"] = r.physical;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["likelihood_delta"] = r.likelihood_delta;
  j["max_probability_deviation"] = r.max_probability_deviation;
  j["fidelity"] = r.fidelity ? Json(*r.fidelity) : Json(nullptr);
  j["trace_distance"] = r.trace_distance ? Json(*r.trace_distance) : Json(nullptr);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move output into place at " + path);
  }
}

}  // namespace sicpom
