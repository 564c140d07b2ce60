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

#include <stdexcept>
#include <string>

namespace dyncoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value failed one of its defining invariants. `invariant()` names the
/// check and `residual()` is the measured violation.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, double residual)
      : Error("invariant '" + invariant + "' violated (residual " +
              std::to_string(residual) + ")"),
        invariant_(std::move(invariant)),
        residual_(residual) {}

  const std::string& invariant() const { return invariant_; }
  double residual() const { return residual_; }

 private:
  std::string invariant_;
  double residual_;
};

class NotFree : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace dyncoh
