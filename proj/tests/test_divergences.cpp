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

#include <cmath>

#include "dyncoh/divergences.hpp"
#include "dyncoh/random.hpp"
#include "oracles.hpp"

namespace dyncoh {
namespace {

TEST(Diamond, ChannelsHaveUnitNorm) {
  for (Index d : {2, 3}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const Channel n = random_channel(s, d, d);
      const DiamondResult r = diamond_norm(n.choi(), d, d);
      EXPECT_TRUE(r.certified);
      EXPECT_NEAR(r.value, 1.0, 1e-6);
    }
  }
  const DiamondResult rect = diamond_norm(random_channel(5, 2, 3).choi(), 2, 3);
  EXPECT_NEAR(rect.value, 1.0, 1e-6);
}

TEST(Diamond, IdentityVersusHadamard) {
  const Channel id = identity_channel(2);
  const Channel h = hadamard_channel();
  EXPECT_NEAR(diamond_distance(id, h).value, 2.0, 1e-6);
  EXPECT_NEAR(diamond_norm(id.choi() - h.choi(), 2, 2).value, 2.0, 1e-6);
  EXPECT_NEAR(diamond_distance(id, id).value, 0.0, 1e-6);
}

TEST(Diamond, FormulationsAgree) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Channel n = random_channel(10 + s, 2, 2);
    const Channel m = random_channel(20 + s, 2, 2);
    const double a = diamond_distance(n, m).value;
    EXPECT_NEAR(a, diamond_norm(n.choi() - m.choi(), 2, 2).value, 1e-6);
    EXPECT_NEAR(a, oracle::qubit_diamond_norm(n.choi() - m.choi(), 400), 1e-3);
  }
}

TEST(TraceDistance, IdentityVersusHadamardGrid) {
  const Channel id = identity_channel(2);
  const Channel h = hadamard_channel();
  const TraceDistanceResult r = channel_trace_distance(id, h);
  EXPECT_TRUE(r.grid_certified);
  EXPECT_NEAR(r.value, oracle::bloch_grid_trace_distance(id.choi(), h.choi()), 1e-3);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(TraceDistance, MatchesGridOnRandomPairs) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Channel n = random_channel(30 + s, 2, 2);
    const Channel m = random_channel(40 + s, 2, 2);
    const TraceDistanceResult r = channel_trace_distance(n, m);
    EXPECT_NEAR(r.value, oracle::bloch_grid_trace_distance(n.choi(), m.choi()), 1e-3);
    EXPECT_NEAR(r.witness.achieved_value, r.value, 1e-12);
    EXPECT_LE(r.value, diamond_distance(n, m).value + 1e-6);
  }
}

TEST(TraceDistance, WitnessReproducesValue) {
  const Channel n = random_channel(1, 3, 2);
  const Channel m = random_channel(2, 3, 2);
  const TraceDistanceResult r = channel_trace_distance(n, m);
  EXPECT_FALSE(r.grid_certified);
  const ComplexMatrix rho = r.witness.density();
  EXPECT_NEAR(trace_norm(ComplexMatrix(n(rho) - m(rho))), r.value, 1e-10);
}

TEST(TraceDistance, AncillaCanIncreaseIt) {
  // identity vs the replacer with I/2: 1 without ancilla, 3/2 with one.
  const Channel id = identity_channel(2);
  const Channel rep = replacer_channel(ComplexMatrix::Identity(2, 2) / 2.0, 2);
  EXPECT_NEAR(channel_trace_distance(id, rep).value, 1.0, 1e-9);
  EXPECT_NEAR(map_output_trace_norm(id.choi() - rep.choi(), 2, 2, 2).value, 1.5, 1e-9);
  EXPECT_NEAR(diamond_distance(id, rep).value, 1.5, 1e-6);
}

TEST(RelativeEntropy, IdentityVersusDephasing) {
  const RelativeEntropyResult r = channel_relative_entropy(identity_channel(2), dephasing_channel(2));
  EXPECT_NEAR(r.lower_bound, std::log(2.0), 1e-6);
  EXPECT_NEAR(channel_relative_entropy(hadamard_channel(), hadamard_channel()).lower_bound, 0.0, 1e-9);
}

TEST(RelativeEntropy, SupportViolationIsInfinite) {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const RelativeEntropyResult r =
      channel_relative_entropy(identity_channel(2), replacer_channel(zero, 2));
  EXPECT_TRUE(std::isinf(r.lower_bound));
}

TEST(RelativeEntropy, EvaluationAtMaximallyEntangled) {
  const Channel n = random_channel(3, 2, 2);
  const Channel m = random_channel(4, 2, 2);
  // (N ⊗ id)(Φ) is J/d with the factors swapped, which leaves D unchanged.
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = std::sqrt(0.5);
  const double at = relative_entropy_at(n, m, projector(phi), 2);
  EXPECT_NEAR(at, relative_entropy(n.choi() / 2.0, m.choi() / 2.0), 1e-10);
  EXPECT_GE(channel_relative_entropy(n, m).lower_bound, at - 1e-12);
}

TEST(Pinsker, ChainOnPairs) {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const SuiteReport r = pinsker_check(random_channel(50 + s, 2, 2), random_channel(60 + s, 2, 2));
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed()) << c.name << " " << c.max_violation;
  }
}

TEST(AxiomSuites, DiamondPasses) {
  const SuiteReport r = f_axiom_suite(DivergenceKind::Diamond, 7, 3, 2, 2);
  EXPECT_GE(r.checks.size(), 5u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed()) << c.name << " " << c.max_violation;
}

TEST(AxiomSuites, RelativeEntropyPasses) {
  const SuiteReport r = f_axiom_suite(DivergenceKind::ChannelRelEnt, 7, 2, 2, 2);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed()) << c.name << " " << c.max_violation;
}

TEST(AxiomSuites, TraceChecksOtherThanAncilla) {
  const SuiteReport r = f_axiom_suite(DivergenceKind::ChannelTrace, 7, 3, 2, 2);
  for (const auto& c : r.checks) {
    if (c.name.find("tensor_identity") != std::string::npos) continue;
    EXPECT_TRUE(c.passed()) << c.name << " " << c.max_violation;
  }
}

TEST(Parse, DivergenceNames) {
  EXPECT_EQ(parse_divergence_kind("Diamond"), DivergenceKind::Diamond);
  EXPECT_EQ(parse_divergence_kind("trace"), DivergenceKind::ChannelTrace);
  EXPECT_EQ(parse_divergence_kind("relent"), DivergenceKind::ChannelRelEnt);
  EXPECT_THROW(parse_divergence_kind("fidelity"), Error);
}

}  // namespace
}  // namespace dyncoh
