// Copyright 2026 The dyncoh Authors
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

#include <algorithm>
#include <string>
#include <vector>

/// Outcome records shared by the property suites.
namespace dyncoh {

/// One property checked over many trials. A violation is the amount by which
/// an inequality fails (≤ 0 when it holds); the record keeps the largest.
struct CheckRecord {
  std::string name;
  double tolerance = 0.0;
  double max_violation = 0.0;
  int trials = 0;
  /// Logged checks are reported but never fail a suite.
  bool asserted = true;
  int solver_failures = 0;
  /// Labels of failing instances (at most a handful) or the worst one.
  std::vector<std::string> witnesses;
  std::string note;

  CheckRecord() = default;
  CheckRecord(std::string n, double tol, bool is_asserted = true)
      : name(std::move(n)), tolerance(tol), asserted(is_asserted) {}

  void observe(double violation, const std::string& label) {
    ++trials;
    if (violation > max_violation || worst_.empty()) {
      max_violation = std::max(max_violation, violation);
      worst_ = label;
    }
    if (violation > tolerance && witnesses.size() < 5) witnesses.push_back(label);
  }
  void solver_failed(const std::string& label) {
    ++trials;
    ++solver_failures;
    if (witnesses.size() < 5) witnesses.push_back(label + " (solver)");
  }
  bool passed() const {
    return !asserted || (max_violation <= tolerance && solver_failures == 0);
  }
  const std::string& worst() const { return worst_; }

 private:
  std::string worst_;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckRecord> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
  bool solver_failure() const {
    for (const auto& c : checks) {
      if (c.asserted && c.solver_failures > 0) return true;
    }
    return false;
  }
  void append(const SuiteReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
};

}  // namespace dyncoh
