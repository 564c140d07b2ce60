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
#include <vector>

#include "dyncoh/linalg.hpp"

namespace dyncoh {

/// Completely positive trace-preserving map A → B stored as its Choi matrix
///   J(N) = Σ_ij |i⟩⟨j|_A ⊗ N(|i⟩⟨j|)_B,
/// with the input factor first. Every Choi reshuffle in the library follows
/// this ordering: row index of J is a * dim_out + b.
class Channel {
 public:
  /// Validates Hermiticity, complete positivity and trace preservation.
  static Channel from_choi(ComplexMatrix choi, Index dim_in, Index dim_out);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const ComplexMatrix& choi() const { return choi_; }

  /// N(x) for an arbitrary operator x on the input space.
  ComplexMatrix operator()(const ComplexMatrix& x) const;

 private:
  Channel(ComplexMatrix choi, Index dim_in, Index dim_out)
      : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {}

  Index dim_in_;
  Index dim_out_;
  ComplexMatrix choi_;
};

struct KrausSet {
  std::vector<ComplexMatrix> ops;  // each dim_out × dim_in
};

/// Fixed orthonormal basis of one system; columns of `basis` are the vectors.
struct DephasingSpec {
  Index dim = 0;
  ComplexMatrix basis;

  static DephasingSpec computational(Index dim);
  /// Throws InvariantViolation unless the basis is unitary within 1e-10.
  void validate() const;
};

/// Dephasing bases for the input and output system of a channel.
struct Bases {
  DephasingSpec in;
  DephasingSpec out;

  static Bases computational(Index dim_in, Index dim_out);
  bool is_computational() const;
};

/// Superchannel Λ(N) = post ∘ (N ⊗ id_E) ∘ pre with pre: C → A⊗E and
/// post: B⊗E → D.
struct Superchannel {
  Channel pre;
  Channel post;
  Index dim_env;
};

// --- Choi-level maps (not necessarily CPTP) ---------------------------------

/// Action of the linear map with Choi matrix `choi` on an operator.
ComplexMatrix apply_map(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                        const ComplexMatrix& x);
/// Hilbert-Schmidt adjoint of that map, acting on an output operator.
ComplexMatrix apply_map_adjoint(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                const ComplexMatrix& y);
/// (Φ ⊗ id_R)(x) for x on A⊗R; result lives on B⊗R.
ComplexMatrix apply_with_ancilla(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                 const ComplexMatrix& x, Index dim_anc);
/// (Φ ⊗ id_R)†(y) for y on B⊗R; result lives on A⊗R.
ComplexMatrix apply_with_ancilla_adjoint(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                         const ComplexMatrix& y, Index dim_anc);
/// Choi of second ∘ first, contracting over the shared system.
ComplexMatrix compose_choi(const ComplexMatrix& second, Index second_out, const ComplexMatrix& first,
                           Index first_in, Index first_out);
/// Choi of a ⊗ b, reshuffled to the (A1 A2) ⊗ (B1 B2) ordering.
ComplexMatrix tensor_choi(const ComplexMatrix& a, Index a_in, Index a_out, const ComplexMatrix& b,
                          Index b_in, Index b_out);
/// (id_A ⊗ Δ_B) J and (Δ_A ⊗ id_B) J in the computational bases.
ComplexMatrix dephase_output_choi(const ComplexMatrix& choi, Index dim_in, Index dim_out);
ComplexMatrix dephase_input_choi(const ComplexMatrix& choi, Index dim_in, Index dim_out);

// --- channel algebra ---------------------------------------------------------

Channel from_kraus(const KrausSet& k);
KrausSet kraus_of(const Channel& n);

/// N(ρ) for a density matrix ρ; validates input and output states.
ComplexMatrix apply(const Channel& n, const ComplexMatrix& rho);

Channel compose(const Channel& second, const Channel& first);
Channel tensor_channels(const Channel& a, const Channel& b);
/// λ a + (1 − λ) b.
Channel mix(const Channel& a, const Channel& b, double lambda);

Channel dephasing_channel(const DephasingSpec& spec);
Channel dephasing_channel(Index dim);
Channel delta_post(const Channel& n);
Channel delta_pre(const Channel& n);
Channel delta_post(const Channel& n, const DephasingSpec& out);
Channel delta_pre(const Channel& n, const DephasingSpec& in);

/// Rewrites n so that the bases in `bases` become computational.
Channel to_computational_frame(const Channel& n, const Bases& bases);

Superchannel make_superchannel(Channel pre, Channel post, Index dim_env);
Channel apply_superchannel(const Superchannel& s, const Channel& n);

// --- instances ---------------------------------------------------------------

Channel identity_channel(Index dim);
/// Conjugation by an isometry v (dim_out × dim_in).
Channel unitary_channel(const ComplexMatrix& v);
Channel hadamard_channel();
/// ρ ↦ (1 − p) ρ + p Tr(ρ) I/d.
Channel depolarizing_channel(Index dim, double p);
/// ρ ↦ Tr(ρ) σ.
Channel replacer_channel(const ComplexMatrix& sigma, Index dim_in);
/// Stinespring sample: Haar-like isometry A → B⊗E with |E| = |A||B|.
Channel random_channel(std::uint64_t seed, Index dim_in, Index dim_out);
/// Classical channel E∘Δ for a column-stochastic matrix (dim_out × dim_in).
Channel classical_channel(const RealMatrix& stochastic);

}  // namespace dyncoh
