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

#include "dyncoh/random.hpp"

#include <cmath>

namespace dyncoh {

ComplexMatrix random_ginibre(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(Rng& rng, Index dim) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_isometry(Rng& rng, Index rows, Index cols) {
  if (rows < cols) throw DimensionMismatch("random_isometry: rows must be >= cols");
  const ComplexMatrix g = random_ginibre(rng, rows, cols);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index k = 0; k < cols; ++k) {
    const cplx d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0) q.col(k) *= d / mag;
  }
  return q;
}

ComplexMatrix random_unitary(Rng& rng, Index dim) { return random_isometry(rng, dim, dim); }

ComplexVector random_pure_state(Rng& rng, Index dim) {
  ComplexVector v = random_ginibre(rng, dim, 1).col(0);
  return v / v.norm();
}

ComplexMatrix random_density(Rng& rng, Index dim) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

double random_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

RealVector random_simplex(Rng& rng, Index dim) {
  std::exponential_distribution<double> dist(1.0);
  RealVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = dist(rng);
  return v / v.sum();
}

RealMatrix random_stochastic(Rng& rng, Index rows, Index cols) {
  RealMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) m.col(c) = random_simplex(rng, rows);
  return m;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dyncoh
