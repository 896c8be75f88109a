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
#include <vector>

#include <json.hpp>

namespace sicpom {

/// One named check: a measured residual compared against a threshold.
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

class ValidationReport {
 public:
  /// Passes when measured <= threshold (NaN fails).
  void add(std::string name, double measured, double threshold, std::string detail = {});
  /// Records a boolean outcome; measured is 0 for pass and 1 for fail.
  void add_flag(std::string name, bool ok, std::string detail = {});
  /// Appends another report's checks, prefixing their names with "<prefix>.".
  void merge(const std::string& prefix, const ValidationReport& other);

  bool passed() const;
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace sicpom
