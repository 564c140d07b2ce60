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

#include "dyncoh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dyncoh {

std::string state_violation(const ComplexMatrix& rho, double* residual) {
  auto report = [&](const char* name, double r) {
    if (residual) *residual = r;
    return std::string(name);
  };
  if (rho.rows() == 0 || rho.rows() != rho.cols()) return report("state.square", kInfinity);
  if (!rho.allFinite()) return report("state.finite", kInfinity);
  const double herm = hermiticity_residual(rho);
  if (herm > tol::herm) return report("state.hermitian", herm);
  const double tr_err = std::abs(rho.trace() - cplx(1.0, 0.0));
  if (tr_err > tol::trace) return report("state.trace", tr_err);
  const ComplexMatrix sym = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const double min_eval = solver.eigenvalues().minCoeff();
  if (min_eval < -tol::psd) return report("state.psd", -min_eval);
  if (residual) *residual = 0.0;
  return {};
}

void validate_state(const ComplexMatrix& rho) {
  double residual = 0.0;
  const std::string name = state_violation(rho, &residual);
  if (!name.empty()) throw InvariantViolation(name, residual);
}

ComplexMatrix log_on_support(const ComplexMatrix& h) {
  const auto dec = eigh(h);
  RealVector logs(dec.values.size());
  for (Index k = 0; k < dec.values.size(); ++k) {
    logs(k) = dec.values(k) > tol::support ? std::log(dec.values(k)) : 0.0;
  }
  return dec.vectors * logs.asDiagonal() * dec.vectors.adjoint();
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  validate_state(rho);
  validate_state(sigma);
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("relative_entropy: dimension mismatch");

  const auto r = eigh(rho);
  const auto s = eigh(sigma);
  double rho_log_rho = 0.0;
  for (Index k = 0; k < r.values.size(); ++k) {
    const double p = r.values(k);
    if (p > tol::support) rho_log_rho += p * std::log(p);
  }
  // Weights of ρ in the eigenbasis of σ.
  const ComplexMatrix rotated = s.vectors.adjoint() * rho * s.vectors;
  double rho_log_sigma = 0.0;
  double off_support = 0.0;
  for (Index k = 0; k < s.values.size(); ++k) {
    const double w = rotated(k, k).real();
    if (s.values(k) > tol::support) {
      rho_log_sigma += w * std::log(s.values(k));
    } else {
      off_support += w;
    }
  }
  if (off_support > tol::support) return kInfinity;
  return std::max(0.0, rho_log_rho - rho_log_sigma);
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionMismatch("trace_distance: dimension mismatch");
  }
  validate_state(rho);
  validate_state(sigma);
  const ComplexMatrix diff = rho - sigma;
  return trace_norm((diff + diff.adjoint()) / 2.0);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  validate_state(rho);
  const auto dec = eigh(rho);
  double s = 0.0;
  for (Index k = 0; k < dec.values.size(); ++k) {
    const double p = dec.values(k);
    if (p > tol::support) s -= p * std::log(p);
  }
  return s;
}

ComplexMatrix projector(const ComplexVector& psi) {
  const ComplexVector unit = psi / psi.norm();
  return unit * unit.adjoint();
}

}  // namespace dyncoh
