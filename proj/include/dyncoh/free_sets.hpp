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

#include <cstdint>
#include <string>
#include <vector>

#include "dyncoh/channel.hpp"
#include "dyncoh/report.hpp"

/// Free channel classes relative to fixed dephasing bases.
///
/// In Choi form (input factor first, row index a * dim_out + b) the classes
/// are coordinate subspaces of the Hermitian matrices:
///
///   DI   J_{(a,b),(a',b)}  = 0 for a ≠ a'
///   CI   J_{(a,b),(a,b')}  = 0 for b ≠ b'
///   DCI  both
namespace dyncoh {

enum class FreeClass { DI, CI, DCI };

inline constexpr FreeClass kAllClasses[] = {FreeClass::DI, FreeClass::CI, FreeClass::DCI};
inline constexpr double kTolMember = 1e-8;

std::string to_string(FreeClass c);
/// Accepts "DI", "CI", "DCI" in any case; throws Error otherwise.
FreeClass parse_free_class(const std::string& name);

struct MembershipReport {
  bool is_member = false;
  /// Frobenius norm of lhs − rhs in the defining identity.
  double violation = 0.0;
  FreeClass free_class = FreeClass::DCI;
};

/// Computational bases on both systems.
MembershipReport membership(const Channel& n, FreeClass c, double tol = kTolMember);
MembershipReport membership(const Channel& n, FreeClass c, const Bases& bases,
                            double tol = kTolMember);
/// Same residual evaluated literally, by composing with dephasing channels.
double membership_violation_by_composition(const Channel& n, FreeClass c);

/// Re Σ conj(weight) · J(row, col).
struct ChoiTerm {
  Index row;
  Index col;
  cplx weight;
};
struct ChoiFunctional {
  std::vector<ChoiTerm> terms;
  double evaluate(const ComplexMatrix& choi) const;
};

/// Real-linear functionals whose common kernel, intersected with the
/// Hermitian matrices, is the Choi slice of the class.
std::vector<ChoiFunctional> affine_constraints(FreeClass c, Index dim_in, Index dim_out);
/// 1 on Choi entries the class leaves free, 0 on entries forced to vanish.
RealMatrix class_mask(FreeClass c, Index dim_in, Index dim_out);

/// Member of the class drawn as a random convex mixture of constructive
/// families (classical channels, post- or pre-dephased random channels,
/// permutation-phase isometries, phase-twirled channels). Not uniform.
Channel sample_free(FreeClass c, std::uint64_t seed, Index dim_in, Index dim_out);

/// Rounds a Choi matrix that is a member up to solver accuracy onto the
/// class: zeroes the forbidden entries, restores Tr_B J = I and, if needed,
/// mixes toward the replacer with I/dim_out until J ⪰ 0.
Channel snap_to_class(ComplexMatrix choi, FreeClass c, Index dim_in, Index dim_out);

/// Frobenius-nearest member of the class (returns n itself when it is
/// already a member). Throws SolverFailure when the SDP does not converge.
Channel project_to_free(const Channel& n, FreeClass c);

/// Validates that pre: C → A⊗E and post: B⊗E → D are members of the class
/// with product dephasing bases; throws NotFree otherwise.
Superchannel free_superchannel(FreeClass c, const Channel& pre, const Channel& post,
                               Index dim_env);
/// Free superchannel with sampled pre/post mapping channels A → B to A → B.
Superchannel random_free_superchannel(FreeClass c, std::uint64_t seed, Index dim_in,
                                      Index dim_out, Index dim_env);

/// Composition closure, convexity, tensor stability and the DCI one-sided
/// dephasing identity over seeded samples.
SuiteReport closure_suite(std::uint64_t seed, int trials, Index dim_in, Index dim_out);

}  // namespace dyncoh
