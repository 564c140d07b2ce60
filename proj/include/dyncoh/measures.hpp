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
#include <optional>
#include <string>

#include "dyncoh/divergences.hpp"
#include "dyncoh/free_sets.hpp"

/// Distance-to-free-set coherence measures of a channel N:
///
///   DI   min_{K ∈ DI}  f(Δ N, Δ K)
///   CI   min_{K ∈ CI}  f(N Δ, K Δ)
///   DCI  min_{K ∈ DCI} f(N, K)
///
/// For DI and CI the dephased images Δ K (resp. K Δ) range exactly over the
/// classical channels E Δ with E column-stochastic, so the free variable is
/// E unless the generic Choi formulation is requested.
namespace dyncoh {

inline constexpr double kCertTol = 1e-6;

struct MeasureOptions {
  std::uint64_t seed = 0;
  /// Optimize over E for DI/CI; false uses a constrained Choi matrix K.
  bool use_reduction = true;
  /// Dephasing bases; the computational ones when empty.
  std::optional<Bases> bases;
  // Cutting-plane settings for the trace-distance measures.
  double mm_tol = 1e-5;
  int max_iter = 100;
  int witness_cap = 200;
  int random_witnesses = 8;
  // Relative-entropy search settings.
  int relent_restarts = 8;
};

struct MeasureResult {
  FreeClass free_class = FreeClass::DCI;
  DivergenceKind kind = DivergenceKind::Diamond;
  /// Reported value (equal to `upper`).
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// upper − lower ≤ kCertTol with both sides backed by certificates.
  bool certified = false;
  /// Minimizing free channel K (E Δ when the reduction was used).
  std::optional<Channel> optimizer;
  /// E when the reduction was used.
  std::optional<RealMatrix> stochastic;
  /// Input attaining the inner maximum at the optimizer.
  Witness witness;
  sdp::SolveReport report;
  int iterations = 0;
  std::string note;
};

/// Throws SolverFailure when an SDP it relies on does not reach Optimal.
MeasureResult coherence_measure(const Channel& n, FreeClass c, DivergenceKind f,
                                const MeasureOptions& opts = {});

/// Measure ≈ 0 on sampled free channels; positive lower bound on channels
/// that are clearly not free (Hadamard at d = 2, random channels).
SuiteReport faithfulness_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                               Index dim_in, Index dim_out);
/// Non-increase under free superchannels and under its three building blocks
/// (free pre-processing, free post-processing, tensoring with the identity).
SuiteReport monotonicity_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                               Index dim_in, Index dim_out);
/// measure(λN + (1−λ)K) ≤ λ measure(N) + (1−λ) measure(K), λ ∈ {¼, ½, ¾}.
SuiteReport convexity_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                            Index dim_in, Index dim_out);
/// DI/CI measures through E agree with the generic Choi formulation.
SuiteReport reduction_suite(DivergenceKind f, std::uint64_t seed, int trials, Index dim_in,
                            Index dim_out);

}  // namespace dyncoh
