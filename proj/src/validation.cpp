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

#include "sicpom/validation.hpp"

#include <algorithm>

namespace sicpom {

void ValidationReport::add(std::string name, double measured, double threshold,
                           std::string detail) {
  const bool ok = measured <= threshold;
  checks_.push_back({std::move(name), measured, threshold, ok, std::move(detail)});
}

void ValidationReport::add_flag(std::string name, bool ok, std::string detail) {
  checks_.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
}

void ValidationReport::merge(const std::string& prefix, const ValidationReport& other) {
  for (Check c : other.checks_) {
    c.name = prefix + "." + c.name;
    checks_.push_back(std::move(c));
  }
}

bool ValidationReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(),
                         [&](const Check& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json out;
  out["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["measured"] = c.measured;
    j["threshold"] = c.threshold;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  out["checks"] = std::move(arr);
  return out;
}

}  // namespace sicpom
