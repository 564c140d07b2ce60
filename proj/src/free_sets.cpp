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

#include "dyncoh/free_sets.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "dyncoh/errors.hpp"
#include "dyncoh/random.hpp"
#include "dyncoh/sdp_model.hpp"

namespace dyncoh {

std::string to_string(FreeClass c) {
  switch (c) {
    case FreeClass::DI:
      return "DI";
    case FreeClass::CI:
      return "CI";
    case FreeClass::DCI:
      return "DCI";
  }
  return "?";
}

FreeClass parse_free_class(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (upper == "DI") return FreeClass::DI;
  if (upper == "CI") return FreeClass::CI;
  if (upper == "DCI" || upper == "DIO") return FreeClass::DCI;
  throw Error("unknown free class '" + name + "'");
}

namespace {

bool forbidden(FreeClass c, Index a, Index b, Index a2, Index b2) {
  const bool di = b == b2 && a != a2;
  const bool ci = a == a2 && b != b2;
  switch (c) {
    case FreeClass::DI:
      return di;
    case FreeClass::CI:
      return ci;
    case FreeClass::DCI:
      return di || ci;
  }
  return false;
}

ComplexMatrix both_dephased(const ComplexMatrix& j, Index dim_in, Index dim_out) {
  return dephase_input_choi(dephase_output_choi(j, dim_in, dim_out), dim_in, dim_out);
}

}  // namespace

RealMatrix class_mask(FreeClass c, Index dim_in, Index dim_out) {
  const Index n = dim_in * dim_out;
  RealMatrix mask = RealMatrix::Ones(n, n);
  for (Index a = 0; a < dim_in; ++a) {
    for (Index b = 0; b < dim_out; ++b) {
      for (Index a2 = 0; a2 < dim_in; ++a2) {
        for (Index b2 = 0; b2 < dim_out; ++b2) {
          if (forbidden(c, a, b, a2, b2)) mask(a * dim_out + b, a2 * dim_out + b2) = 0.0;
        }
      }
    }
  }
  return mask;
}

MembershipReport membership(const Channel& n, FreeClass c, double tol) {
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const ComplexMatrix& j = n.choi();
  ComplexMatrix diff;
  switch (c) {
    case FreeClass::DI:
      diff = dephase_output_choi(j, da, db) - both_dephased(j, da, db);
      break;
    case FreeClass::CI:
      diff = dephase_input_choi(j, da, db) - both_dephased(j, da, db);
      break;
    case FreeClass::DCI:
      diff = dephase_output_choi(j, da, db) - dephase_input_choi(j, da, db);
      break;
  }
  MembershipReport r;
  r.free_class = c;
  r.violation = diff.norm();
  r.is_member = r.violation <= tol;
  return r;
}

MembershipReport membership(const Channel& n, FreeClass c, const Bases& bases, double tol) {
  if (bases.is_computational()) return membership(n, c, tol);
  return membership(to_computational_frame(n, bases), c, tol);
}

double membership_violation_by_composition(const Channel& n, FreeClass c) {
  const Channel din = dephasing_channel(n.dim_in());
  const Channel dout = dephasing_channel(n.dim_out());
  const Channel post = compose(dout, n);
  const Channel pre = compose(n, din);
  const Channel both = compose(dout, pre);
  switch (c) {
    case FreeClass::DI:
      return (post.choi() - both.choi()).norm();
    case FreeClass::CI:
      return (pre.choi() - both.choi()).norm();
    case FreeClass::DCI:
      return (post.choi() - pre.choi()).norm();
  }
  return 0.0;
}

double ChoiFunctional::evaluate(const ComplexMatrix& choi) const {
  double v = 0.0;
  for (const ChoiTerm& t : terms) v += (std::conj(t.weight) * choi(t.row, t.col)).real();
  return v;
}

std::vector<ChoiFunctional> affine_constraints(FreeClass c, Index dim_in, Index dim_out) {
  const RealMatrix mask = class_mask(c, dim_in, dim_out);
  std::vector<ChoiFunctional> out;
  for (Index r = 0; r < mask.rows(); ++r) {
    for (Index col = r + 1; col < mask.cols(); ++col) {
      if (mask(r, col) != 0.0) continue;
      out.push_back({{{r, col, cplx(1.0, 0.0)}}});
      out.push_back({{{r, col, cplx(0.0, 1.0)}}});
    }
  }
  return out;
}

namespace {

/// V = Σ_i e^{iφ_i} |π(i)⟩⟨i| with π injective; requires rows ≥ cols.
ComplexMatrix permutation_phase_isometry(Rng& rng, Index rows, Index cols) {
  std::vector<Index> perm(static_cast<std::size_t>(rows));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = rows - 1; i > 0; --i) {
    const auto j = static_cast<Index>(random_uniform(rng) * static_cast<double>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(std::min(j, i))]);
  }
  ComplexMatrix v = ComplexMatrix::Zero(rows, cols);
  for (Index i = 0; i < cols; ++i) {
    v(perm[static_cast<std::size_t>(i)], i) = std::polar(1.0, random_uniform(rng, 0.0, 2.0 * M_PI));
  }
  return v;
}

/// Average of U_θ† N(U_θ · U_θ†) U_θ over diagonal phase unitaries: keeps the
/// Choi entries with (a = a', b = b') or (a = b, a' = b').
Channel phase_twirl(const Channel& n) {
  const Index d = n.dim_in();
  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      for (Index a2 = 0; a2 < d; ++a2) {
        for (Index b2 = 0; b2 < d; ++b2) {
          if ((a == a2 && b == b2) || (a == b && a2 == b2)) {
            j(a * d + b, a2 * d + b2) = n.choi()(a * d + b, a2 * d + b2);
          }
        }
      }
    }
  }
  return Channel::from_choi(std::move(j), d, d);
}

/// Tr_E on B⊗E.
Channel trace_out_env(Index dim_b, Index dim_e) {
  KrausSet k;
  for (Index e = 0; e < dim_e; ++e) {
    ComplexMatrix op = ComplexMatrix::Zero(dim_b, dim_b * dim_e);
    for (Index b = 0; b < dim_b; ++b) op(b, b * dim_e + e) = 1.0;
    k.ops.push_back(std::move(op));
  }
  return from_kraus(k);
}

/// Tr_E ∘ W ∘ V: embed A into B⊗E by a permutation-phase isometry, apply a
/// phase-twirled random channel, discard E. Every factor is DCI.
Channel coarse_grained_coherent(Rng& rng, std::uint64_t seed, Index dim_in, Index dim_out) {
  const Index dim_e = (dim_in + dim_out - 1) / dim_out;
  const Index big = dim_out * dim_e;
  const Channel embed = unitary_channel(permutation_phase_isometry(rng, big, dim_in));
  const Channel twirled = phase_twirl(random_channel(seed, big, big));
  Channel k = compose(twirled, embed);
  if (dim_e > 1) k = compose(trace_out_env(dim_out, dim_e), k);
  return k;
}

}  // namespace

Channel sample_free(FreeClass c, std::uint64_t seed, Index dim_in, Index dim_out) {
  if (dim_in <= 0 || dim_out <= 0) throw DimensionMismatch("sample_free: dimensions must be positive");
  Rng rng(seed);
  std::vector<Channel> parts;
  parts.push_back(classical_channel(random_stochastic(rng, dim_out, dim_in)));
  if (dim_in <= dim_out) {
    parts.push_back(unitary_channel(permutation_phase_isometry(rng, dim_out, dim_in)));
  }
  parts.push_back(coarse_grained_coherent(rng, derive_seed(seed, 1), dim_in, dim_out));
  if (c == FreeClass::DI) {
    parts.push_back(delta_pre(random_channel(derive_seed(seed, 2), dim_in, dim_out)));
  } else if (c == FreeClass::CI) {
    parts.push_back(delta_post(random_channel(derive_seed(seed, 2), dim_in, dim_out)));
  }
  const RealVector w = random_simplex(rng, static_cast<Index>(parts.size()));
  ComplexMatrix j = ComplexMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (std::size_t k = 0; k < parts.size(); ++k) j += w(static_cast<Index>(k)) * parts[k].choi();
  // Exact zeros on the forbidden entries: the mixture is a member up to
  // rounding, which the mask removes.
  j = j.cwiseProduct(class_mask(c, dim_in, dim_out).cast<cplx>());
  return Channel::from_choi(std::move(j), dim_in, dim_out);
}

Channel snap_to_class(ComplexMatrix j, FreeClass c, Index dim_in, Index dim_out) {
  const Index side = dim_in * dim_out;
  if (j.rows() != side || j.cols() != side) throw DimensionMismatch("snap_to_class");
  j = (j + j.adjoint()).eval() / 2.0;
  j = j.cwiseProduct(class_mask(c, dim_in, dim_out).cast<cplx>());
  // The correction is diagonal in B, so the mask survives it.
  const ComplexMatrix defect =
      ComplexMatrix::Identity(dim_in, dim_in) - trace_out_second(j, dim_in, dim_out);
  j += tensor(defect, ComplexMatrix::Identity(dim_out, dim_out)) / static_cast<double>(dim_out);
  const double lo = eigh(j).values.minCoeff();
  if (lo < 0.0) {
    const double floor = 1.0 / static_cast<double>(dim_out);
    const double eps = -lo / (floor - lo);
    j = (1.0 - eps) * j + eps * ComplexMatrix::Identity(side, side) * floor;
  }
  return Channel::from_choi(std::move(j), dim_in, dim_out);
}

Channel project_to_free(const Channel& n, FreeClass c) {
  if (membership(n, c).is_member) return n;
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const Index side = da * db;
  const ComplexMatrix id = ComplexMatrix::Identity(side, side);

  sdp::Model m;
  const sdp::AffineMatrix x = m.add_psd(side);
  const sdp::AffineMatrix y = m.add_psd(2 * side);
  // [[I, X − J], [X − J, S]] ⪰ 0  ⇒  tr S ≥ ‖X − J‖_F².
  m.equal_hermitian(y.block(0, 0, side, side) - sdp::AffineMatrix::constant(id));
  sdp::AffineMatrix off = y.block(0, side, side, side) - x;
  off += n.choi();
  m.equal_all(off);
  m.equal_hermitian(sdp::trace_out_second(x, da, db) -
                    sdp::AffineMatrix::constant(ComplexMatrix::Identity(da, da)));
  const RealMatrix mask = class_mask(c, da, db);
  for (Index r = 0; r < side; ++r) {
    for (Index col = r + 1; col < side; ++col) {
      if (mask(r, col) != 0.0) continue;
      m.equal(x(r, col).re);
      m.equal(x(r, col).im);
    }
  }
  m.minimize(y.block(side, side, side, side).real_trace());
  const sdp::Solution sol = m.solve();
  if (sol.report.status != sdp::Status::Optimal) {
    throw SolverFailure("project_to_free: " + sdp::to_string(sol.report.status));
  }

  return snap_to_class(sdp::Model::value(x, sol), c, da, db);
}

Superchannel free_superchannel(FreeClass c, const Channel& pre, const Channel& post,
                               Index dim_env) {
  const MembershipReport rp = membership(pre, c);
  if (!rp.is_member) {
    throw NotFree("pre-processing channel is not " + to_string(c) + " (violation " +
                  std::to_string(rp.violation) + ")");
  }
  const MembershipReport rq = membership(post, c);
  if (!rq.is_member) {
    throw NotFree("post-processing channel is not " + to_string(c) + " (violation " +
                  std::to_string(rq.violation) + ")");
  }
  return make_superchannel(pre, post, dim_env);
}

Superchannel random_free_superchannel(FreeClass c, std::uint64_t seed, Index dim_in,
                                      Index dim_out, Index dim_env) {
  const Channel pre = sample_free(c, derive_seed(seed, 11), dim_in, dim_in * dim_env);
  const Channel post = sample_free(c, derive_seed(seed, 12), dim_out * dim_env, dim_out);
  return free_superchannel(c, pre, post, dim_env);
}

SuiteReport closure_suite(std::uint64_t seed, int trials, Index dim_in, Index dim_out) {
  constexpr double kTol = 1e-10;
  SuiteReport report;
  report.name = "closure";
  for (FreeClass c : kAllClasses) {
    const std::string tag = "." + to_string(c);
    CheckRecord sampler("closure.sampler" + tag, kTol);
    CheckRecord composition("closure.composition" + tag, kTol);
    CheckRecord convexity("closure.convexity" + tag, kTol);
    CheckRecord tensor_id("closure.tensor_identity" + tag, kTol);
    CheckRecord one_sided("closure.one_sided_dephasing" + tag, kTol);
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
      const std::string label = "trial " + std::to_string(t);
      const Channel k1 = sample_free(c, derive_seed(s, 1), dim_in, dim_out);
      const Channel k2 = sample_free(c, derive_seed(s, 2), dim_out, dim_out);
      const Channel k3 = sample_free(c, derive_seed(s, 3), dim_in, dim_out);
      sampler.observe(membership(k1, c).violation, label);
      composition.observe(membership(compose(k2, k1), c).violation, label);
      Rng rng(derive_seed(s, 4));
      const double lambda = random_uniform(rng);
      const ComplexMatrix mixed = lambda * k1.choi() + (1.0 - lambda) * k3.choi();
      double worst = 0.0;
      for (const auto& f : affine_constraints(c, dim_in, dim_out)) {
        worst = std::max(worst, std::abs(f.evaluate(mixed)));
      }
      convexity.observe(worst, label);
      tensor_id.observe(membership(tensor_channels(k1, identity_channel(2)), c).violation, label);
      if (c == FreeClass::DCI) {
        const double dp = (delta_post(k1).choi() - delta_post(delta_pre(k1)).choi()).norm();
        const double dq = (delta_pre(k1).choi() - delta_post(delta_pre(k1)).choi()).norm();
        one_sided.observe(std::max(dp, dq), label);
      }
    }
    report.checks.push_back(sampler);
    report.checks.push_back(composition);
    report.checks.push_back(convexity);
    report.checks.push_back(tensor_id);
    if (c == FreeClass::DCI) report.checks.push_back(one_sided);
  }
  return report;
}

}  // namespace dyncoh
