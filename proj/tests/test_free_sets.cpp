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

#include "dyncoh/free_sets.hpp"
#include "dyncoh/random.hpp"

namespace dyncoh {
namespace {

TEST(Membership, HadamardViolations) {
  const Channel h = hadamard_channel();
  EXPECT_NEAR(membership(h, FreeClass::DI).violation, 1.0, 1e-12);
  EXPECT_NEAR(membership(h, FreeClass::CI).violation, 1.0, 1e-12);
  EXPECT_NEAR(membership(h, FreeClass::DCI).violation, std::sqrt(2.0), 1e-12);
  for (FreeClass c : kAllClasses) EXPECT_FALSE(membership(h, c).is_member);
}

TEST(Membership, ElementaryMembers) {
  for (FreeClass c : kAllClasses) {
    EXPECT_TRUE(membership(dephasing_channel(3), c).is_member);
    EXPECT_TRUE(membership(identity_channel(2), c).is_member);
    EXPECT_TRUE(membership(replacer_channel(ComplexMatrix::Identity(3, 3) / 3.0, 2), c).is_member);
  }
  const Channel n = random_channel(2, 2, 2);
  EXPECT_TRUE(membership(delta_pre(n), FreeClass::DI).is_member);
  EXPECT_TRUE(membership(delta_post(n), FreeClass::CI).is_member);
  EXPECT_TRUE(membership(delta_post(delta_pre(n)), FreeClass::DCI).is_member);
}

TEST(Membership, ChoiFormMatchesComposition) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Channel n = random_channel(s, 2 + s % 2, 2 + (s / 2) % 2);
    for (FreeClass c : kAllClasses) {
      EXPECT_NEAR(membership(n, c).violation, membership_violation_by_composition(n, c), 1e-12);
    }
  }
}

TEST(Membership, RotatedBases) {
  Rng rng(31);
  const ComplexMatrix u = random_unitary(rng, 2);
  const ComplexMatrix v = random_unitary(rng, 3);
  const Channel free = sample_free(FreeClass::DCI, 4, 2, 3);
  // Conjugating a computational-basis member into the rotated frames.
  const Channel n = compose(unitary_channel(v), compose(free, unitary_channel(u.adjoint())));
  const Bases b{DephasingSpec{2, u}, DephasingSpec{3, v}};
  EXPECT_TRUE(membership(n, FreeClass::DCI, b).is_member);
  EXPECT_FALSE(membership(n, FreeClass::DCI).is_member);
}

TEST(Parse, ClassNames) {
  EXPECT_EQ(parse_free_class("dci"), FreeClass::DCI);
  EXPECT_EQ(parse_free_class("DI"), FreeClass::DI);
  EXPECT_EQ(to_string(FreeClass::CI), "CI");
  EXPECT_THROW(parse_free_class("MIO"), Error);
}

class FreeSampling : public ::testing::TestWithParam<std::tuple<FreeClass, int, int>> {};

TEST_P(FreeSampling, SamplesAreMembers) {
  const auto [c, din, dout] = GetParam();
  for (std::uint64_t s = 0; s < 25; ++s) {
    const Channel n = sample_free(c, s, din, dout);
    EXPECT_TRUE(membership(n, c).is_member) << "seed " << s;
    for (const auto& f : affine_constraints(c, din, dout)) EXPECT_NEAR(f.evaluate(n.choi()), 0.0, 1e-12);
  }
}

TEST_P(FreeSampling, MaskAgreesWithConstraints) {
  const auto [c, din, dout] = GetParam();
  const RealMatrix mask = class_mask(c, din, dout);
  Rng rng(5);
  const ComplexMatrix masked = random_hermitian(rng, din * dout).cwiseProduct(mask.cast<cplx>());
  for (const auto& f : affine_constraints(c, din, dout)) EXPECT_NEAR(f.evaluate(masked), 0.0, 1e-14);
}

TEST_P(FreeSampling, ClosureSuite) {
  const auto [c, din, dout] = GetParam();
  (void)c;
  const SuiteReport r = closure_suite(3, 20, din, dout);
  for (const auto& check : r.checks) EXPECT_TRUE(check.passed()) << check.name << " " << check.max_violation;
}

INSTANTIATE_TEST_SUITE_P(Dims, FreeSampling,
                         ::testing::Values(std::tuple{FreeClass::DI, 2, 2}, std::tuple{FreeClass::CI, 2, 2},
                                           std::tuple{FreeClass::DCI, 2, 2}, std::tuple{FreeClass::DI, 2, 3},
                                           std::tuple{FreeClass::CI, 3, 2}, std::tuple{FreeClass::DCI, 3, 3}));

TEST(Projection, MembersAreFixed) {
  const Channel n = sample_free(FreeClass::CI, 8, 2, 2);
  EXPECT_LT((project_to_free(n, FreeClass::CI).choi() - n.choi()).norm(), 1e-12);
}

TEST(Projection, NearestAmongSamples) {
  const Channel n = random_channel(40, 2, 2);
  for (FreeClass c : kAllClasses) {
    const Channel p = project_to_free(n, c);
    EXPECT_TRUE(membership(p, c).is_member);
    const double d = (p.choi() - n.choi()).norm();
    for (std::uint64_t s = 0; s < 20; ++s) {
      EXPECT_LE(d, (sample_free(c, s, 2, 2).choi() - n.choi()).norm() + 1e-6);
    }
  }
}

TEST(Superchannels, FreeValidation) {
  const Channel pre = sample_free(FreeClass::DI, 1, 2, 4);
  const Channel post = sample_free(FreeClass::DI, 2, 4, 2);
  EXPECT_NO_THROW(free_superchannel(FreeClass::DI, pre, post, 2));
  const Channel bad = compose(hadamard_channel(), identity_channel(2));
  EXPECT_THROW(free_superchannel(FreeClass::DI, bad, identity_channel(2), 1), NotFree);
}

TEST(Superchannels, PreserveFreeness) {
  for (FreeClass c : kAllClasses) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Superchannel sc = random_free_superchannel(c, s, 2, 2, 1 + s % 2);
      const Channel out = apply_superchannel(sc, sample_free(c, 100 + s, 2, 2));
      EXPECT_LE(membership(out, c).violation, 1e-10);
    }
  }
}

}  // namespace
}  // namespace dyncoh
