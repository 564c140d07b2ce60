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

#include "dyncoh/channel.hpp"
#include "dyncoh/report.hpp"
#include "dyncoh/sdp.hpp"

/// Distances between channels A → B:
///
///   ChannelTrace   max_ρ ‖N(ρ) − M(ρ)‖_1           (no ancilla, in [0, 2])
///   Diamond        max_ρ ‖(N − M) ⊗ id_R (ρ)‖_1     (|R| = |A|, in [0, 2])
///   ChannelRelEnt  sup_ψ D((N ⊗ id_R)ψ ‖ (M ⊗ id_R)ψ)
namespace dyncoh {

enum class DivergenceKind { ChannelTrace, Diamond, ChannelRelEnt };

std::string to_string(DivergenceKind k);
/// Accepts "trace", "diamond", "relent" and the enum spellings.
DivergenceKind parse_divergence_kind(const std::string& name);

/// Pure input on A ⊗ R (dim_anc = 1 for ancilla-free maximizations).
struct Witness {
  ComplexVector state;
  Index dim_in = 0;
  Index dim_anc = 1;
  double achieved_value = 0.0;

  ComplexMatrix density() const;
};

struct TraceDistanceOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  /// Bloch-sphere pass when dim_in = 2.
  bool use_grid = true;
  int grid_points = 10000;
};

inline constexpr double kGridTol = 1e-3;

struct TraceDistanceResult {
  double value = 0.0;
  Witness witness;
  /// True when the Bloch-grid pass ran; the value is then within kGridTol of
  /// the maximum.
  bool grid_certified = false;
};

/// max over pure ψ on A ⊗ R of ‖(Φ ⊗ id_R)(ψψ†)‖_1 for the map with Choi
/// matrix `choi`, by alternating sign/eigenvector ascent from several starts
/// (and the Bloch grid when dim_in = 2 and dim_anc = 1). The value is always
/// attained at the returned witness.
TraceDistanceResult map_output_trace_norm(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                          Index dim_anc, const TraceDistanceOptions& opts = {});

TraceDistanceResult channel_trace_distance(const Channel& n, const Channel& m,
                                           const TraceDistanceOptions& opts = {});

struct DiamondResult {
  double value = 0.0;
  sdp::SolveReport report;
  /// Optimal status with |primal − dual| ≤ 1e-6.
  bool certified = false;
};

inline constexpr double kDiamondCertTol = 1e-6;

/// ‖Φ‖_⋄ of an arbitrary linear map, from the block-matrix SDP
///   max Re tr(J† X)  s.t.  [[ρ0 ⊗ I, X], [X†, ρ1 ⊗ I]] ⪰ 0,  ρ0, ρ1 states.
DiamondResult diamond_norm(const ComplexMatrix& choi, Index dim_in, Index dim_out);

/// ‖N − M‖_⋄ = 2 · min { ‖Tr_B Z‖_∞ : Z ⪰ 0, Z ⪰ J_N − J_M }.
DiamondResult diamond_distance(const Channel& n, const Channel& m);

struct RelativeEntropyOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iter = 300;
};

struct RelativeEntropyResult {
  /// Best value found; +∞ when a support violation was met.
  double lower_bound = 0.0;
  Witness witness;
};

/// D((N ⊗ id_R)(σ) ‖ (M ⊗ id_R)(σ)) for a given input σ on A ⊗ R.
double relative_entropy_at(const Channel& n, const Channel& m, const ComplexMatrix& sigma,
                           Index dim_anc);

/// Riemannian ascent over pure states of A ⊗ R, |R| = |A|, starting from the
/// maximally entangled state and seeded random states.
RelativeEntropyResult channel_relative_entropy(const Channel& n, const Channel& m,
                                               const RelativeEntropyOptions& opts = {});

/// Divergence value with the conventions of each kind (lower bound for the
/// heuristic kinds, certified value for Diamond).
double divergence(DivergenceKind kind, const Channel& n, const Channel& m, std::uint64_t seed = 0);

/// The five distance-function properties (non-negativity, weak
/// monotonicity, joint convexity, tensor with identity, tensor with
/// dephasing) over seeded random instances, plus kind-specific extras.
SuiteReport f_axiom_suite(DivergenceKind kind, std::uint64_t seed, int trials, Index dim_in,
                          Index dim_out);

/// D(N‖M) ≥ ½‖N − M‖_⋄² ≥ ½‖N − M‖_1², checked in the certified direction.
SuiteReport pinsker_check(const Channel& n, const Channel& m, const std::string& label = "pair");
SuiteReport pinsker_suite(std::uint64_t seed, int trials, Index dim_in, Index dim_out);

}  // namespace dyncoh
