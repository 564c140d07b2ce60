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
#include <random>

#include "dyncoh/linalg.hpp"

namespace dyncoh {

/// All sampling in the library draws from this engine so that a seed fully
/// determines every instance.
using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(Rng& rng, Index rows, Index cols);
ComplexMatrix random_hermitian(Rng& rng, Index dim);
/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
ComplexMatrix random_unitary(Rng& rng, Index dim);
/// Isometry with orthonormal columns, `rows` ≥ `cols`.
ComplexMatrix random_isometry(Rng& rng, Index rows, Index cols);
ComplexVector random_pure_state(Rng& rng, Index dim);
/// Full-rank density matrix from the induced (Ginibre) measure.
ComplexMatrix random_density(Rng& rng, Index dim);
/// Uniform draw in [lo, hi).
double random_uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
/// Column-stochastic matrix with columns drawn uniformly from the simplex.
RealMatrix random_stochastic(Rng& rng, Index rows, Index cols);
/// Uniform point of the probability simplex.
RealVector random_simplex(Rng& rng, Index dim);

/// Independent stream seed for trial `stream` of a run seeded with `base`
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace dyncoh
