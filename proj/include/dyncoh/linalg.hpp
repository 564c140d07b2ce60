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

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <vector>

#include "dyncoh/errors.hpp"

namespace dyncoh {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by the whole library.
namespace tol {
inline constexpr double herm = 1e-8;
inline constexpr double psd = 1e-8;
inline constexpr double trace = 1e-8;
/// Eigenvalues at or below this are treated as zero by the matrix logarithm.
inline constexpr double support = 1e-10;
}  // namespace tol

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Partial trace over every subsystem not listed in `keep`. Subsystems are
/// ordered most-significant first, so index = ((i0 * d1 + i1) * d2 + i2)...
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& m, const std::vector<Index>& dims,
    const std::vector<Index>& keep) {
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw DimensionMismatch("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total) {
    throw DimensionMismatch("partial_trace: matrix side does not match product of dims");
  }
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= static_cast<Index>(dims.size())) {
      throw DimensionMismatch("partial_trace: subsystem index out of range");
    }
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Split every full index into its kept and traced parts.
  std::vector<Index> kept_part(static_cast<std::size_t>(total));
  std::vector<Index> traced_part(static_cast<std::size_t>(total));
  Index kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) kept_dim *= dims[s];
  }
  for (Index full = 0; full < total; ++full) {
    Index rest = full;
    Index kpos = 0, kscale = 1, tpos = 0, tscale = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const Index digit = rest % dims[s];
      rest /= dims[s];
      if (kept[s]) {
        kpos += digit * kscale;
        kscale *= dims[s];
      } else {
        tpos += digit * tscale;
        tscale *= dims[s];
      }
    }
    kept_part[static_cast<std::size_t>(full)] = kpos;
    traced_part[static_cast<std::size_t>(full)] = tpos;
  }

  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(kept_dim,
                                                                                    kept_dim);
  for (Index i = 0; i < total; ++i) {
    for (Index j = 0; j < total; ++j) {
      if (traced_part[static_cast<std::size_t>(i)] == traced_part[static_cast<std::size_t>(j)]) {
        out(kept_part[static_cast<std::size_t>(i)], kept_part[static_cast<std::size_t>(j)]) +=
            m(i, j);
      }
    }
  }
  return out;
}

/// Tr_B of an operator on A ⊗ B.
template <typename Derived>
auto trace_out_second(const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b) {
  return partial_trace(m, {dim_a, dim_b}, {0});
}

/// Tr_A of an operator on A ⊗ B.
template <typename Derived>
auto trace_out_first(const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b) {
  return partial_trace(m, {dim_a, dim_b}, {1});
}

/// Largest absolute entry of m − m†, relative to max(1, max |m_ij|).
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return kInfinity;
  const double scale = std::max(1.0, static_cast<double>(m.cwiseAbs().maxCoeff()));
  return static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff()) / scale;
}

template <typename Scalar>
struct EigenDecomposition {
  RealVector values;  // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

/// Hermitian eigendecomposition with eigenvalues sorted in descending order.
/// Throws InvariantViolation when `h` is not Hermitian within tol::herm.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (h.rows() != h.cols()) throw DimensionMismatch("eigh: matrix must be square");
  const double residual = hermiticity_residual(h);
  if (residual > tol::herm) throw InvariantViolation("hermitian", residual);
  const Mat sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  const Index n = h.rows();
  EigenDecomposition<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && hermiticity_residual(m) <= 1e-14) {
    const Mat sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

/// Throws InvariantViolation unless `rho` is a density matrix within the
/// library tolerances.
void validate_state(const ComplexMatrix& rho);

/// Checks the state invariants without throwing; returns the name of the
/// first violated invariant or an empty string.
std::string state_violation(const ComplexMatrix& rho, double* residual = nullptr);

/// Matrix logarithm restricted to the support (eigenvalues ≤ tol::support map
/// to zero). Natural logarithm.
ComplexMatrix log_on_support(const ComplexMatrix& h);

/// Umegaki relative entropy Tr ρ(log ρ − log σ) in nats; +∞ when ρ has weight
/// above tol::support outside the support of σ.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// ‖ρ − σ‖₁.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Pure-state projector |ψ⟩⟨ψ| of a (not necessarily normalized) vector.
ComplexMatrix projector(const ComplexVector& psi);

}  // namespace dyncoh
