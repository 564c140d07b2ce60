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

#include "dyncoh/measures.hpp"

#include <algorithm>
#include <cmath>

#include "dyncoh/errors.hpp"
#include "dyncoh/random.hpp"
#include "dyncoh/sdp_model.hpp"

namespace dyncoh {

namespace {

/// The channel the free variable is compared against: ΔN, NΔ or N.
Channel target_of(const Channel& n, FreeClass c) {
  switch (c) {
    case FreeClass::DI:
      return delta_post(n);
    case FreeClass::CI:
      return delta_pre(n);
    case FreeClass::DCI:
      return n;
  }
  return n;
}

/// Choi of the effective free channel (ΔK, KΔ, K or EΔ) as an affine
/// expression, with the variables that produce it.
struct FreeVariable {
  bool stochastic = false;
  sdp::AffineMatrix effective;
  sdp::AffineMatrix k;
  std::vector<sdp::AffineScalar> e;
};

FreeVariable add_free_variable(sdp::Model& m, FreeClass c, Index da, Index db, bool reduce) {
  FreeVariable fv;
  const Index side = da * db;
  if (reduce && c != FreeClass::DCI) {
    fv.stochastic = true;
    fv.e = m.add_nonnegative(side);
    fv.effective = sdp::AffineMatrix(side, side);
    for (Index i = 0; i < da; ++i) {
      sdp::AffineScalar column;
      for (Index j = 0; j < db; ++j) {
        const sdp::AffineScalar& eji = fv.e[static_cast<std::size_t>(i * db + j)];
        column += eji;
        fv.effective(i * db + j, i * db + j).re = eji;
      }
      m.equal(column, 1.0);
    }
    return fv;
  }
  fv.k = m.add_psd(side);
  m.equal_hermitian(sdp::trace_out_second(fv.k, da, db) -
                    sdp::AffineMatrix::constant(ComplexMatrix::Identity(da, da)));
  const RealMatrix mask = class_mask(c, da, db);
  for (Index r = 0; r < side; ++r) {
    for (Index col = r + 1; col < side; ++col) {
      if (mask(r, col) != 0.0) continue;
      m.equal(fv.k(r, col).re);
      m.equal(fv.k(r, col).im);
    }
  }
  switch (c) {
    case FreeClass::DI: {
      // (id ⊗ Δ): keep entries with b = b'.
      RealMatrix keep = RealMatrix::Zero(side, side);
      for (Index a = 0; a < da; ++a) {
        for (Index a2 = 0; a2 < da; ++a2) {
          for (Index b = 0; b < db; ++b) keep(a * db + b, a2 * db + b) = 1.0;
        }
      }
      fv.effective = fv.k.masked(keep);
      break;
    }
    case FreeClass::CI: {
      // (Δ ⊗ id): keep entries with a = a'.
      RealMatrix keep = RealMatrix::Zero(side, side);
      for (Index a = 0; a < da; ++a) keep.block(a * db, a * db, db, db).setOnes();
      fv.effective = fv.k.masked(keep);
      break;
    }
    case FreeClass::DCI:
      fv.effective = fv.k;
      break;
  }
  return fv;
}

struct Extracted {
  Channel optimizer;
  Channel effective;
  std::optional<RealMatrix> stochastic;
};

Extracted extract(const FreeVariable& fv, const sdp::Solution& sol, FreeClass c, Index da,
                  Index db) {
  if (fv.stochastic) {
    RealMatrix e(db, da);
    for (Index i = 0; i < da; ++i) {
      for (Index j = 0; j < db; ++j) {
        e(j, i) = std::max(0.0, sdp::Model::value(fv.e[static_cast<std::size_t>(i * db + j)], sol));
      }
      e.col(i) /= e.col(i).sum();
    }
    const Channel k = classical_channel(e);
    return {k, k, e};
  }
  const Channel k = snap_to_class(sdp::Model::value(fv.k, sol), c, da, db);
  switch (c) {
    case FreeClass::DI:
      return {k, delta_post(k), std::nullopt};
    case FreeClass::CI:
      return {k, delta_pre(k), std::nullopt};
    case FreeClass::DCI:
      return {k, k, std::nullopt};
  }
  return {k, k, std::nullopt};
}

void require_optimal(const sdp::SolveReport& r, const char* what) {
  if (r.status != sdp::Status::Optimal) {
    throw SolverFailure(std::string(what) + ": " + sdp::to_string(r.status));
  }
}

MeasureResult diamond_measure(const Channel& n, FreeClass c, const MeasureOptions& opts) {
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const Index side = da * db;
  const Channel target = target_of(n, c);

  sdp::Model m;
  const FreeVariable fv = add_free_variable(m, c, da, db, opts.use_reduction);
  const sdp::AffineMatrix z = m.add_psd(side);
  const sdp::AffineMatrix p = m.add_psd(side);
  const sdp::AffineMatrix q = m.add_psd(da);
  const sdp::AffineScalar t = m.add_nonnegative(1)[0];
  // Z ⪰ J_T − J_K and t I ⪰ Tr_B Z.
  sdp::AffineMatrix link = z - p + fv.effective;
  link -= target.choi();
  m.equal_hermitian(link);
  sdp::AffineMatrix top(da, da);
  for (Index i = 0; i < da; ++i) top(i, i).re = t;
  m.equal_hermitian(top - sdp::trace_out_second(z, da, db) - q);
  m.minimize(2.0 * t);
  const sdp::Solution sol = m.solve();
  require_optimal(sol.report, "diamond measure");

  const Extracted ex = extract(fv, sol, c, da, db);
  const DiamondResult check = diamond_distance(target, ex.effective);
  require_optimal(check.report, "diamond measure (evaluation)");

  MeasureResult r;
  r.report = sol.report;
  r.iterations = sol.report.iterations;
  r.lower = std::max(0.0, sol.report.dual_value);
  r.upper = std::max(r.lower, check.report.primal_value);
  r.value = r.upper;
  r.certified = r.upper - r.lower <= kCertTol;
  r.optimizer = ex.optimizer;
  r.stochastic = ex.stochastic;
  // The maximally entangled input is the natural witness for the diamond
  // value; its trace value is recorded for reference.
  const TraceDistanceResult w =
      map_output_trace_norm(target.choi() - ex.effective.choi(), da, db, da, {8, opts.seed});
  r.witness = w.witness;
  return r;
}

MeasureResult trace_measure(const Channel& n, FreeClass c, const MeasureOptions& opts) {
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const Channel target = target_of(n, c);

  std::vector<ComplexVector> witnesses;
  for (Index i = 0; i < da; ++i) witnesses.push_back(ComplexVector::Unit(da, i));
  Rng rng(derive_seed(opts.seed, 0x6d6d));
  for (int k = 0; k < opts.random_witnesses; ++k) witnesses.push_back(random_pure_state(rng, da));

  MeasureResult r;
  r.upper = kInfinity;
  double lower = 0.0;
  bool grid = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    sdp::Model m;
    const FreeVariable fv = add_free_variable(m, c, da, db, opts.use_reduction);
    const sdp::AffineScalar s = m.add_nonnegative(1)[0];
    for (const ComplexVector& psi : witnesses) {
      const ComplexMatrix rho = psi * psi.adjoint();
      const sdp::AffineMatrix pos = m.add_psd(db);
      const sdp::AffineMatrix neg = m.add_psd(db);
      const sdp::AffineScalar slack = m.add_nonnegative(1)[0];
      // T(ψ) − K(ψ) = P − Q and tr P + tr Q ≤ s.
      sdp::AffineMatrix h = pos - neg + sdp::choi_apply(fv.effective, rho, db);
      h -= target(rho);
      m.equal_hermitian(h);
      m.equal(pos.real_trace() + neg.real_trace() + slack - s);
    }
    m.minimize(s);
    const sdp::Solution sol = m.solve();
    if (sol.report.status != sdp::Status::Optimal && it > 0) {
      // Earlier iterations already give a valid bracket.
      r.note = "master problem stopped (" + sdp::to_string(sol.report.status) + ")";
      break;
    }
    require_optimal(sol.report, "trace measure master problem");
    r.report = sol.report;
    lower = std::max(lower, sol.report.dual_value);

    const Extracted ex = extract(fv, sol, c, da, db);
    TraceDistanceOptions inner;
    inner.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(it));
    const TraceDistanceResult tr = channel_trace_distance(target, ex.effective, inner);
    r.iterations = it + 1;
    if (tr.value < r.upper) {
      r.upper = tr.value;
      r.optimizer = ex.optimizer;
      r.stochastic = ex.stochastic;
      r.witness = tr.witness;
      grid = tr.grid_certified;
    }
    if (r.upper - lower <= opts.mm_tol) break;
    if (static_cast<int>(witnesses.size()) >= opts.witness_cap) {
      r.note = "witness cap reached";
      break;
    }
    witnesses.push_back(tr.witness.state);
  }
  r.lower = std::clamp(lower, 0.0, r.upper);
  r.value = r.upper;
  r.certified = grid && r.upper - r.lower <= kCertTol;
  if (!grid) r.note += r.note.empty() ? "inner maximum not grid-certified" : "; inner maximum not grid-certified";
  return r;
}

MeasureResult relent_measure(const Channel& n, FreeClass c, const MeasureOptions& opts) {
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const Channel target = target_of(n, c);
  const MeasureResult dia = diamond_measure(n, c, opts);

  // Candidates for the minimizer: the diamond optimizer pulled toward the
  // replacer with I/dB (free in every class) and the fully dephased target.
  const Channel replacer =
      replacer_channel(ComplexMatrix::Identity(db, db) / static_cast<double>(db), da);
  const Channel effective = target_of(*dia.optimizer, c);
  std::vector<std::pair<Channel, Channel>> candidates;  // (optimizer, effective)
  for (double t : {0.0, 0.01, 0.05, 0.1, 0.2}) {
    candidates.emplace_back(mix(replacer, *dia.optimizer, t), mix(replacer, effective, t));
  }
  const Channel classical = delta_pre(delta_post(n));
  candidates.emplace_back(classical, classical);

  MeasureResult r;
  r.report = dia.report;
  r.upper = kInfinity;
  RelativeEntropyOptions ro;
  ro.seed = opts.seed;
  ro.restarts = opts.relent_restarts;
  for (const auto& [k, eff] : candidates) {
    const RelativeEntropyResult re = channel_relative_entropy(target, eff, ro);
    ++r.iterations;
    if (re.lower_bound < r.upper || !r.optimizer) {
      r.upper = re.lower_bound;
      r.optimizer = k;
      r.witness = re.witness;
    }
  }
  r.lower = 0.5 * dia.lower * dia.lower;
  if (r.upper < r.lower) {
    r.note = "search value below the Pinsker bound; upper raised to it";
    r.upper = r.lower;
  }
  r.value = r.upper;
  r.certified = false;
  return r;
}

/// Inverse of to_computational_frame for the same bases.
Bases inverse_bases(const Bases& b) {
  return Bases{DephasingSpec{b.in.dim, b.in.basis.adjoint()},
               DephasingSpec{b.out.dim, b.out.basis.adjoint()}};
}

}  // namespace

MeasureResult coherence_measure(const Channel& n, FreeClass c, DivergenceKind f,
                                const MeasureOptions& opts) {
  if (opts.bases && !opts.bases->is_computational()) {
    opts.bases->in.validate();
    opts.bases->out.validate();
    MeasureOptions inner = opts;
    inner.bases.reset();
    MeasureResult r = coherence_measure(to_computational_frame(n, *opts.bases), c, f, inner);
    if (r.optimizer) r.optimizer = to_computational_frame(*r.optimizer, inverse_bases(*opts.bases));
    return r;
  }
  MeasureResult r;
  switch (f) {
    case DivergenceKind::Diamond:
      r = diamond_measure(n, c, opts);
      break;
    case DivergenceKind::ChannelTrace:
      r = trace_measure(n, c, opts);
      break;
    case DivergenceKind::ChannelRelEnt:
      r = relent_measure(n, c, opts);
      break;
  }
  r.free_class = c;
  r.kind = f;
  return r;
}

}  // namespace dyncoh
