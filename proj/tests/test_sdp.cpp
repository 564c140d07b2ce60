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


#include <gtest/gtest.h>

#include "dyncoh/random.hpp"
#include "dyncoh/sdp_model.hpp"

namespace dyncoh::sdp {
namespace {

TEST(Solver, LinearProgram) {
  Model m;
  const auto x = m.add_nonnegative(2);
  m.equal(x[0] + x[1], 1.0);
  m.minimize(x[0] + 2.0 * x[1]);
  const Solution s = m.solve();
  ASSERT_EQ(s.report.status, Status::Optimal);
  EXPECT_NEAR(s.report.primal_value, 1.0, 1e-7);
  EXPECT_NEAR(s.report.dual_value, 1.0, 1e-7);
  EXPECT_NEAR(Model::value(x[0], s), 1.0, 1e-6);
}

TEST(Solver, MinimumEigenvalue) {
  Rng rng(2);
  for (Index n : {2, 3, 4}) {
    const ComplexMatrix h = random_hermitian(rng, n);
    Model m;
    const AffineMatrix x = m.add_psd(n);
    m.equal(x.real_trace(), 1.0);
    m.minimize(x.re_inner(h));
    const Solution s = m.solve();
    ASSERT_EQ(s.report.status, Status::Optimal);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    EXPECT_NEAR(s.report.primal_value, es.eigenvalues()(0), 1e-6);
    EXPECT_NEAR(s.report.dual_value, es.eigenvalues()(0), 1e-6);
  }
}

TEST(Solver, TraceNormSplit) {
  Rng rng(3);
  const ComplexMatrix h = random_hermitian(rng, 3);
  Model m;
  const AffineMatrix p = m.add_psd(3);
  const AffineMatrix q = m.add_psd(3);
  AffineMatrix diff = p - q;
  diff -= h;
  m.equal_hermitian(diff);
  m.minimize(p.real_trace() + q.real_trace());
  const Solution s = m.solve();
  ASSERT_EQ(s.report.status, Status::Optimal);
  EXPECT_NEAR(s.report.primal_value, trace_norm(h), 1e-6);
  EXPECT_LT((Model::value(p, s) - Model::value(q, s) - h).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Solver, FidelityWithComplexCoupling) {
  Rng rng(4);
  const ComplexMatrix rho = random_density(rng, 2);
  const ComplexMatrix sigma = random_density(rng, 2);
  Model m;
  const AffineMatrix z = m.add_psd(4);
  AffineMatrix top = z.block(0, 0, 2, 2);
  top -= rho;
  AffineMatrix bottom = z.block(2, 2, 2, 2);
  bottom -= sigma;
  m.equal_hermitian(top);
  m.equal_hermitian(bottom);
  m.minimize(-1.0 * z.block(0, 2, 2, 2).re_inner(ComplexMatrix::Identity(2, 2)));
  const Solution s = m.solve();
  ASSERT_EQ(s.report.status, Status::Optimal);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> a(rho), b(sigma);
  const double fidelity = trace_norm(ComplexMatrix(a.operatorSqrt() * b.operatorSqrt()));
  EXPECT_NEAR(-s.report.primal_value, fidelity, 1e-6);
}

TEST(Solver, DependentRowsDropped) {
  Model m;
  const auto x = m.add_nonnegative(2);
  m.equal(x[0] + x[1], 1.0);
  m.equal(2.0 * x[0] + 2.0 * x[1], 2.0);
  m.minimize(x[1]);
  const Solution s = m.solve();
  ASSERT_EQ(s.report.status, Status::Optimal);
  EXPECT_EQ(s.report.dropped_equalities, 1);
  EXPECT_NEAR(s.report.primal_value, 0.0, 1e-7);
}

TEST(Solver, InconsistentRowsInfeasible) {
  Model m;
  const auto x = m.add_nonnegative(2);
  m.equal(x[0] + x[1], 1.0);
  m.equal(x[0] + x[1], 2.0);
  m.minimize(x[0]);
  EXPECT_EQ(m.solve().report.status, Status::Infeasible);
}

TEST(Solver, ConeInfeasible) {
  Model m;
  const AffineMatrix x = m.add_psd(2);
  m.equal(x.real_trace(), -1.0);
  m.minimize(x.real_trace());
  const Solution s = m.solve();
  EXPECT_EQ(s.report.status, Status::Infeasible);
  EXPECT_TRUE(s.report.primal_infeasible);
}

TEST(Solver, MalformedProgramThrows) {
  ConicProgram p;
  p.blocks.push_back({2, BlockKind::Nonnegative});
  p.equalities.push_back({{{5, 1.0}}});
  p.rhs.push_back(1.0);
  EXPECT_THROW(solve(p), Error);
}

TEST(Coordinates, Layout) {
  EXPECT_EQ(coordinate_count(Block{3, BlockKind::Hermitian}), 9);
  EXPECT_EQ(coordinate_count(Block{3, BlockKind::Symmetric}), 6);
  EXPECT_EQ(coordinate_count(Block{4, BlockKind::Nonnegative}), 4);
  EXPECT_EQ(upper_index(3, 0, 0), 0);
  EXPECT_EQ(upper_index(3, 1, 1), 3);
  EXPECT_EQ(strict_upper_index(3, 1, 2), 2);
}

TEST(Modelling, PartialTraceAndKron) {
  Rng rng(6);
  const ComplexMatrix a = random_hermitian(rng, 6);
  const AffineMatrix c = AffineMatrix::constant(a);
  const ComplexMatrix expect = dyncoh::trace_out_second(a, 2, 3);
  const AffineMatrix t = trace_out_second(c, 2, 3);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      EXPECT_NEAR(t(i, j).re.constant, expect(i, j).real(), 1e-14);
      EXPECT_NEAR(t(i, j).im.constant, expect(i, j).imag(), 1e-14);
    }
  const ComplexMatrix small = random_hermitian(rng, 2);
  const AffineMatrix k = kron(small, AffineMatrix::constant(a.block(0, 0, 3, 3)));
  const ComplexMatrix kexp = tensor(small, a.block(0, 0, 3, 3));
  EXPECT_NEAR(k(4, 2).re.constant, kexp(4, 2).real(), 1e-14);
  EXPECT_NEAR(k(4, 2).im.constant, kexp(4, 2).imag(), 1e-14);
}

}  // namespace
}  // namespace dyncoh::sdp
