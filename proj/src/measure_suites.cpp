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

#include <cmath>

#include "dyncoh/errors.hpp"
#include "dyncoh/measures.hpp"
#include "dyncoh/random.hpp"

namespace dyncoh {

namespace {

double comparison_tol(DivergenceKind f, Index dim_in) {
  if (f == DivergenceKind::ChannelTrace && dim_in == 2) return kGridTol;
  return 2.0 * kCertTol;
}

std::string suffix(FreeClass c, DivergenceKind f) { return "." + to_string(c) + "." + to_string(f); }

Channel random_instance(std::uint64_t seed, Index dim_in, Index dim_out, int trial) {
  if (trial % 2 == 1 && dim_in == dim_out) {
    Rng rng(seed);
    return unitary_channel(random_unitary(rng, dim_in));
  }
  return random_channel(seed, dim_in, dim_out);
}

MeasureOptions options_for(std::uint64_t seed) {
  MeasureOptions o;
  o.seed = seed;
  return o;
}

/// lhs ≤ rhs on reported values: the upper end of both brackets.
void compare(CheckRecord& rec, const MeasureResult& lhs, double rhs_upper, const std::string& label) {
  rec.observe(lhs.upper - rhs_upper, label);
}

}  // namespace

SuiteReport faithfulness_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                               Index dim_in, Index dim_out) {
  const std::string tag = suffix(c, f);
  CheckRecord zero("faithfulness.free_channels_zero" + tag, kCertTol);
  CheckRecord positive("faithfulness.non_free_positive" + tag, 0.0);
  positive.note = "violation = threshold minus certified lower bound";

  auto check_zero = [&](const Channel& k, const std::string& label) {
    try {
      zero.observe(coherence_measure(k, c, f, options_for(seed)).upper, label);
    } catch (const SolverFailure&) {
      zero.solver_failed(label);
    }
  };
  auto check_positive = [&](const Channel& n, double threshold, const std::string& label) {
    try {
      positive.observe(threshold - coherence_measure(n, c, f, options_for(seed)).lower, label);
    } catch (const SolverFailure&) {
      positive.solver_failed(label);
    }
  };

  if (dim_in == dim_out) check_zero(dephasing_channel(dim_in), "dephasing");
  check_zero(replacer_channel(ComplexMatrix::Identity(dim_out, dim_out) / static_cast<double>(dim_out),
                              dim_in),
             "replacer");
  if (dim_in == 2 && dim_out == 2) check_positive(hadamard_channel(), 1e-4, "hadamard");
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const std::string label = "trial " + std::to_string(t) + " seed " + std::to_string(s);
    check_zero(sample_free(c, s, dim_in, dim_out), label);
    const Channel n = random_instance(derive_seed(s, 1), dim_in, dim_out, t);
    if (membership(n, c).violation >= 0.1) check_positive(n, 1e-6, label);
  }
  SuiteReport r;
  r.name = "faithfulness" + tag;
  r.checks = {zero, positive};
  return r;
}

SuiteReport monotonicity_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                               Index dim_in, Index dim_out) {
  const std::string tag = suffix(c, f);
  const double tol = comparison_tol(f, dim_in);
  CheckRecord superch("monotonicity.superchannel" + tag, tol);
  CheckRecord pre("monotonicity.free_preprocessing" + tag, tol);
  CheckRecord post("monotonicity.free_postprocessing" + tag, tol);
  CheckRecord tens("monotonicity.tensor_identity" + tag, tol);
  CheckRecord dephase("monotonicity.post_dephasing" + tag, tol);
  CheckRecord identity("monotonicity.identity_superchannel" + tag, tol);
  if (f != DivergenceKind::Diamond) {
    for (CheckRecord* r : {&superch, &pre, &post, &tens, &dephase, &identity}) {
      r->note = "bracket comparison: lower(transformed) vs upper(original)";
    }
  }

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const std::string label = "trial " + std::to_string(t) + " seed " + std::to_string(s);
    const MeasureOptions o = options_for(s);
    try {
      const Channel n = random_instance(derive_seed(s, 1), dim_in, dim_out, t);
      const MeasureResult base = coherence_measure(n, c, f, o);
      const Index dim_env = 1 + (t % 2);
      const Superchannel lam = random_free_superchannel(c, derive_seed(s, 2), dim_in, dim_out, dim_env);
      compare(superch, coherence_measure(apply_superchannel(lam, n), c, f, o), base.upper, label);
      const Channel phi_in = sample_free(c, derive_seed(s, 3), dim_in, dim_in);
      compare(pre, coherence_measure(compose(n, phi_in), c, f, o), base.upper, label);
      const Channel phi_out = sample_free(c, derive_seed(s, 4), dim_out, dim_out);
      compare(post, coherence_measure(compose(phi_out, n), c, f, o), base.upper, label);
      compare(dephase, coherence_measure(delta_post(n), c, f, o), base.upper, label);
      if (t == 0) {
        const Superchannel trivial =
            make_superchannel(identity_channel(dim_in), identity_channel(dim_out), 1);
        const MeasureResult same = coherence_measure(apply_superchannel(trivial, n), c, f, o);
        identity.observe(std::abs(same.value - base.value), label);
      }
      if (t % 5 == 0) {
        const Channel big = tensor_channels(n, identity_channel(2));
        MeasureOptions capped = o;
        capped.max_iter = 20;
        compare(tens, coherence_measure(big, c, f, capped), base.upper, label);
      }
    } catch (const SolverFailure&) {
      superch.solver_failed(label);
    }
  }
  SuiteReport r;
  r.name = "monotonicity" + tag;
  r.checks = {superch, pre, post, dephase, identity, tens};
  return r;
}

SuiteReport convexity_suite(FreeClass c, DivergenceKind f, std::uint64_t seed, int trials,
                            Index dim_in, Index dim_out) {
  const std::string tag = suffix(c, f);
  const double tol = comparison_tol(f, dim_in);
  CheckRecord convex("convexity.mixture" + tag, tol);
  CheckRecord free_mix("convexity.free_mixture_zero" + tag, kCertTol);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const std::string label = "trial " + std::to_string(t) + " seed " + std::to_string(s);
    const MeasureOptions o = options_for(s);
    try {
      const Channel n = random_instance(derive_seed(s, 1), dim_in, dim_out, t);
      const Channel k = random_channel(derive_seed(s, 2), dim_in, dim_out);
      const MeasureResult mn = coherence_measure(n, c, f, o);
      const MeasureResult mk = coherence_measure(k, c, f, o);
      for (double lambda : {0.25, 0.5, 0.75}) {
        const MeasureResult mixed = coherence_measure(mix(n, k, lambda), c, f, o);
        compare(convex, mixed, lambda * mn.upper + (1.0 - lambda) * mk.upper,
                label + " lambda " + std::to_string(lambda));
      }
      if (t % 5 == 0) {
        const Channel f1 = sample_free(c, derive_seed(s, 3), dim_in, dim_out);
        const Channel f2 = sample_free(c, derive_seed(s, 4), dim_in, dim_out);
        free_mix.observe(coherence_measure(mix(f1, f2, 0.5), c, f, o).upper, label);
      }
    } catch (const SolverFailure&) {
      convex.solver_failed(label);
    }
  }
  SuiteReport r;
  r.name = "convexity" + tag;
  r.checks = {convex, free_mix};
  return r;
}

SuiteReport reduction_suite(DivergenceKind f, std::uint64_t seed, int trials, Index dim_in,
                            Index dim_out) {
  SuiteReport r;
  r.name = "reduction." + to_string(f);
  for (FreeClass c : {FreeClass::DI, FreeClass::CI}) {
    CheckRecord rec("reduction.stochastic_vs_choi" + suffix(c, f), 1e-4);
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
      const std::string label = "trial " + std::to_string(t) + " seed " + std::to_string(s);
      try {
        const Channel n = random_instance(derive_seed(s, 1), dim_in, dim_out, t);
        MeasureOptions o = options_for(s);
        const MeasureResult reduced = coherence_measure(n, c, f, o);
        o.use_reduction = false;
        const MeasureResult generic = coherence_measure(n, c, f, o);
        rec.observe(std::abs(reduced.value - generic.value), label);
      } catch (const SolverFailure&) {
        rec.solver_failed(label);
      }
    }
    r.checks.push_back(rec);
  }
  return r;
}

}  // namespace dyncoh
