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

#include <map>
#include <vector>

#include "dyncoh/sdp.hpp"

/// Thin modelling layer over `ConicProgram`: cone variables become affine
/// matrix expressions that can be added, scaled, sliced, tensored with
/// constants and partially traced before being tied by equalities.
namespace dyncoh::sdp {

/// Σ coef·x_i + constant over program coordinates.
struct AffineScalar {
  std::map<Index, double> terms;
  double constant = 0.0;

  AffineScalar() = default;
  explicit AffineScalar(double c) : constant(c) {}

  AffineScalar& operator+=(const AffineScalar& o);
  AffineScalar& operator-=(const AffineScalar& o);
  AffineScalar& operator*=(double s);
  void add_scaled(const AffineScalar& o, double s);
};

AffineScalar operator+(AffineScalar a, const AffineScalar& b);
AffineScalar operator-(AffineScalar a, const AffineScalar& b);
AffineScalar operator*(double s, AffineScalar a);

struct ComplexAffine {
  AffineScalar re;
  AffineScalar im;

  /// this += z · o
  void add_scaled(const ComplexAffine& o, cplx z);
};

class AffineMatrix {
 public:
  AffineMatrix() = default;
  AffineMatrix(Index rows, Index cols);
  static AffineMatrix constant(const ComplexMatrix& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  ComplexAffine& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const ComplexAffine& operator()(Index r, Index c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  AffineMatrix& operator+=(const AffineMatrix& o);
  AffineMatrix& operator-=(const AffineMatrix& o);
  AffineMatrix& operator+=(const ComplexMatrix& m);
  AffineMatrix& operator-=(const ComplexMatrix& m);
  AffineMatrix& operator*=(cplx s);

  AffineMatrix block(Index r, Index c, Index h, Index w) const;
  /// Entrywise product with a constant mask.
  AffineMatrix masked(const RealMatrix& mask) const;
  AffineScalar real_trace() const;
  /// Re tr(c† · this).
  AffineScalar re_inner(const ComplexMatrix& c) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<ComplexAffine> data_;
};

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator*(cplx s, AffineMatrix a);
AffineMatrix kron(const ComplexMatrix& c, const AffineMatrix& x);
AffineMatrix kron(const AffineMatrix& x, const ComplexMatrix& c);
/// Trace over the second (`trace_out_second`) or first factor of a
/// dims.first × dims.second bipartite operator.
AffineMatrix trace_out_second(const AffineMatrix& x, Index d1, Index d2);
AffineMatrix trace_out_first(const AffineMatrix& x, Index d1, Index d2);
/// Σ_ij ρ_ij · J_(i,j): the output of the map whose Choi matrix (input
/// factor first) is `choi`, applied to ρ.
AffineMatrix choi_apply(const AffineMatrix& choi, const ComplexMatrix& rho, Index dim_out);

class Model {
 public:
  /// Hermitian PSD variable of side n.
  AffineMatrix add_psd(Index n);
  /// k nonnegative scalars.
  std::vector<AffineScalar> add_nonnegative(Index k);

  /// expr = 0 for a Hermitian-structured expression: diagonal real parts and
  /// the real/imaginary parts of the strict upper triangle.
  void equal_hermitian(const AffineMatrix& expr);
  /// Every real and imaginary part of every entry vanishes.
  void equal_all(const AffineMatrix& expr);
  void equal(const AffineScalar& expr, double rhs = 0.0);

  void minimize(const AffineScalar& objective);

  const ConicProgram& program() const { return program_; }
  Solution solve(const SolveOptions& options = {}) const;

  static double value(const AffineScalar& e, const Solution& sol);
  static ComplexMatrix value(const AffineMatrix& e, const Solution& sol);

 private:
  ConicProgram program_;
  Index next_ = 0;
};

}  // namespace dyncoh::sdp
