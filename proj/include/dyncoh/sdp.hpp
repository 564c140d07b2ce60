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

#include <string>
#include <utility>
#include <vector>

#include "dyncoh/linalg.hpp"

/// Dense primal-dual interior-point solver for small conic programs
///
///   minimize   ⟨c, x⟩ + offset
///   subject to ⟨a_i, x⟩ = b_i,   every block of x in its cone,
///
/// where blocks are complex Hermitian PSD, real symmetric PSD or nonnegative
/// orthants. Hermitian blocks are embedded as real symmetric blocks of doubled
/// side; the core iterates on a homogeneous self-dual embedding with
/// Nesterov-Todd scaling and Mehrotra correction.
namespace dyncoh::sdp {

enum class BlockKind { Hermitian, Symmetric, Nonnegative };

struct Block {
  Index size = 0;
  BlockKind kind = BlockKind::Hermitian;
};

/// Sparse real-linear functional over the scalar coordinates of a program.
/// Repeated indices are summed.
struct LinearFunctional {
  std::vector<std::pair<Index, double>> terms;
};

/// Scalar coordinates of one block, in the order:
///   Hermitian n:  Re x_ab for a ≤ b (row-major upper triangle), then
///                 Im x_ab for a < b (same order)          → n² coordinates
///   Symmetric n:  x_ab for a ≤ b                          → n(n+1)/2
///   Nonnegative k: x_i                                    → k
Index coordinate_count(const Block& block);
Index upper_index(Index n, Index a, Index b);         // a ≤ b
Index strict_upper_index(Index n, Index a, Index b);  // a < b

struct ConicProgram {
  std::vector<Block> blocks;
  LinearFunctional objective;
  double objective_offset = 0.0;
  std::vector<LinearFunctional> equalities;
  std::vector<double> rhs;

  Index coordinate_count() const;
  /// Index of the first coordinate of `block`.
  Index block_offset(std::size_t block) const;
  /// Throws Error when a functional references a missing coordinate or the
  /// right-hand sides are not finite.
  void validate() const;
};

enum class Status { Optimal, MaxIter, Infeasible, NumericalTrouble };

std::string to_string(Status status);

struct SolveOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  int max_iter = 200;
};

struct SolveReport {
  Status status = Status::NumericalTrouble;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// primal_value − dual_value.
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  /// Set when Infeasible: which side carries the certificate.
  bool primal_infeasible = false;
  bool dual_infeasible = false;
  /// Equalities dropped as linearly dependent during presolve.
  Index dropped_equalities = 0;
};

struct Solution {
  SolveReport report;
  /// Primal scalar coordinates (see `coordinate_count`).
  RealVector x;
  /// Multipliers for the equalities as given (zero for dropped rows).
  RealVector y;
  /// Primal blocks: Hermitian/Symmetric as square matrices, Nonnegative as a
  /// column vector.
  std::vector<ComplexMatrix> blocks;
};

/// Never throws for numerical reasons; non-optimal outcomes are reported
/// through `report.status`. Throws Error for malformed programs.
Solution solve(const ConicProgram& program, const SolveOptions& options = {});

}  // namespace dyncoh::sdp
