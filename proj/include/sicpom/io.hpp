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

#include <json.hpp>

#include "sicpom/optics.hpp"
#include "sicpom/quantum.hpp"
#include "sicpom/tomography.hpp"

namespace sicpom {

using Json = nlohmann::ordered_json;

/// Integer >= 0, whether stored signed (built in code) or unsigned (parsed).
bool is_non_negative_integer(const Json& v);

/// printf("%.17g").
std::string format_double(double x);

/// Nested rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& rows);

/// State file: {"dim", "kind": "pure", "amplitudes": [[re,im],...]} or
/// {"dim", "kind": "mixed", "rows": [[[re,im],...],...]}. Structural problems
/// raise ConfigError; the first violated type invariant raises InvariantError.
DensityMatrix state_from_json(const Json& j);
Json state_to_json(const DensityMatrix& rho);
Json ket_to_json(const Ket& k);
DensityMatrix load_state_file(const std::string& path);

/// CSV with header "port,result,count".
std::string counts_to_csv(const CountRecord& rec);
CountRecord counts_from_csv(const std::string& text);
Json counts_to_json(const CountRecord& rec);
CountRecord counts_from_json(const Json& j);
/// Reads either format, chosen by the first non-blank character.
CountRecord load_counts_file(const std::string& path);

Json circuit_to_json(const PhotonicCircuit& c);
PhotonicCircuit circuit_from_json(const Json& j);

Json reconstruction_to_json(const ReconstructionResult& r);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe partial output.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace sicpom
