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

#include "sicpom/validation.hpp"

namespace sicpom {

/// SIC and MUB checks for both dimensions, two-step equivalence, tetrahedron
/// geometry and the optical benches. Check names are stable and dotted
/// ("sic4.pairwise_fidelity", "bench.basis3.entangling", ...).
ValidationReport run_invariant_suite();

}  // namespace sicpom
