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

#include "dyncoh/divergences.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "dyncoh/errors.hpp"
#include "dyncoh/random.hpp"
#include "dyncoh/sdp_model.hpp"

namespace dyncoh {

std::string to_string(DivergenceKind k) {
  switch (k) {
    case DivergenceKind::ChannelTrace:
      return "ChannelTrace";
    case DivergenceKind::Diamond:
      return "Diamond";
    case DivergenceKind::ChannelRelEnt:
      return "ChannelRelEnt";
  }
  return "?";
}

DivergenceKind parse_divergence_kind(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "trace" || lower == "channeltrace") return DivergenceKind::ChannelTrace;
  if (lower == "diamond") return DivergenceKind::Diamond;
  if (lower == "relent" || lower == "channelrelent" || lower == "relative-entropy") {
    return DivergenceKind::ChannelRelEnt;
  }
  throw Error("unknown divergence kind '" + name + "'");
}

ComplexMatrix Witness::density() const { return state * state.adjoint(); }

namespace {

using HermSolver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

/// Φ ⊗ id_R on one of its inputs, with the Choi matrix fixed.
class AncillaMap {
 public:
  AncillaMap(const ComplexMatrix& choi, Index dim_in, Index dim_out, Index dim_anc)
      : choi_(choi), din_(dim_in), dout_(dim_out), danc_(dim_anc) {}

  ComplexMatrix forward(const ComplexMatrix& x) const {
    if (danc_ == 1) return apply_map(choi_, din_, dout_, x);
    return apply_with_ancilla(choi_, din_, dout_, x, danc_);
  }
  ComplexMatrix adjoint(const ComplexMatrix& y) const {
    if (danc_ == 1) return apply_map_adjoint(choi_, din_, dout_, y);
    return apply_with_ancilla_adjoint(choi_, din_, dout_, y, danc_);
  }
  Index input_dim() const { return din_ * danc_; }

 private:
  const ComplexMatrix& choi_;
  Index din_;
  Index dout_;
  Index danc_;
};

double output_trace_norm(const AncillaMap& phi, const ComplexVector& psi) {
  const HermSolver es(hermitize(phi.forward(psi * psi.adjoint())), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Alternating maximization of tr(U Φ(ψψ†)) over Hermitian unitaries U and
/// unit vectors ψ; the trace norm never decreases along the iteration.
std::pair<double, ComplexVector> sign_ascent(const AncillaMap& phi, ComplexVector psi) {
  double value = -1.0;
  for (int it = 0; it < 500; ++it) {
    const HermSolver es(hermitize(phi.forward(psi * psi.adjoint())));
    const RealVector& lam = es.eigenvalues();
    const double current = lam.cwiseAbs().sum();
    if (current <= value + 1e-14) break;
    value = current;
    RealVector signs(lam.size());
    for (Index k = 0; k < lam.size(); ++k) signs(k) = lam(k) >= 0.0 ? 1.0 : -1.0;
    const ComplexMatrix u = es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
    const HermSolver top(hermitize(phi.adjoint(u)));
    const ComplexVector next = top.eigenvectors().col(top.eigenvalues().size() - 1);
    psi = next;
  }
  // The final ψ may be an improvement that was not re-evaluated.
  const double final_value = output_trace_norm(phi, psi);
  return {std::max(value, final_value), psi};
}

ComplexVector bloch_state(double z, double phi) {
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  ComplexVector psi(2);
  psi(0) = std::cos(theta / 2.0);
  psi(1) = std::polar(std::sin(theta / 2.0), phi);
  return psi;
}

}  // namespace

TraceDistanceResult map_output_trace_norm(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                          Index dim_anc, const TraceDistanceOptions& opts) {
  if (choi.rows() != dim_in * dim_out || choi.cols() != choi.rows()) {
    throw DimensionMismatch("map_output_trace_norm: Choi side must be dim_in * dim_out");
  }
  const AncillaMap phi(choi, dim_in, dim_out, dim_anc);
  const Index d = phi.input_dim();
  TraceDistanceResult best;
  best.value = -1.0;
  auto consider = [&](const std::pair<double, ComplexVector>& r) {
    if (r.first > best.value) {
      best.value = r.first;
      best.witness.state = r.second;
    }
  };

  std::vector<ComplexVector> starts;
  if (dim_anc > 1) {
    ComplexVector mes = ComplexVector::Zero(d);
    const Index r = std::min(dim_in, dim_anc);
    for (Index i = 0; i < r; ++i) mes(i * dim_anc + i) = 1.0 / std::sqrt(static_cast<double>(r));
    starts.push_back(mes);
  }
  for (Index i = 0; i < d && static_cast<int>(starts.size()) < opts.restarts; ++i) {
    starts.push_back(ComplexVector::Unit(d, i));
  }
  Rng rng(derive_seed(opts.seed, 0x7472));
  while (static_cast<int>(starts.size()) < std::max(opts.restarts, 1)) {
    starts.push_back(random_pure_state(rng, d));
  }
  for (const auto& s : starts) consider(sign_ascent(phi, s));

  if (opts.use_grid && dim_anc == 1 && dim_in == 2 && opts.grid_points > 0) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    const int n = opts.grid_points;
    double grid_best = -1.0;
    ComplexVector grid_psi;
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / n;
      const ComplexVector psi = bloch_state(z, golden * k);
      const double v = output_trace_norm(phi, psi);
      if (v > grid_best) {
        grid_best = v;
        grid_psi = psi;
      }
    }
    consider({grid_best, grid_psi});
    consider(sign_ascent(phi, grid_psi));
    best.grid_certified = true;
  }
  best.witness.dim_in = dim_in;
  best.witness.dim_anc = dim_anc;
  best.value = std::max(best.value, 0.0);
  best.witness.achieved_value = best.value;
  return best;
}

TraceDistanceResult channel_trace_distance(const Channel& n, const Channel& m,
                                           const TraceDistanceOptions& opts) {
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out()) {
    throw DimensionMismatch("channel_trace_distance: channel dimensions differ");
  }
  const ComplexMatrix diff = n.choi() - m.choi();
  return map_output_trace_norm(diff, n.dim_in(), n.dim_out(), 1, opts);
}

DiamondResult diamond_norm(const ComplexMatrix& choi, Index dim_in, Index dim_out) {
  const Index side = dim_in * dim_out;
  if (choi.rows() != side || choi.cols() != side) {
    throw DimensionMismatch("diamond_norm: Choi side must be dim_in * dim_out");
  }
  const ComplexMatrix id_out = ComplexMatrix::Identity(dim_out, dim_out);
  sdp::Model m;
  const sdp::AffineMatrix y = m.add_psd(2 * side);
  const sdp::AffineMatrix rho0 = m.add_psd(dim_in);
  const sdp::AffineMatrix rho1 = m.add_psd(dim_in);
  m.equal_hermitian(y.block(0, 0, side, side) - sdp::kron(rho0, id_out));
  m.equal_hermitian(y.block(side, side, side, side) - sdp::kron(rho1, id_out));
  m.equal(rho0.real_trace(), 1.0);
  m.equal(rho1.real_trace(), 1.0);
  m.minimize(-1.0 * y.block(0, side, side, side).re_inner(choi));
  const sdp::Solution sol = m.solve();
  DiamondResult r;
  r.report = sol.report;
  r.value = -sol.report.primal_value;
  r.certified = sol.report.status == sdp::Status::Optimal &&
                std::abs(sol.report.gap) <= kDiamondCertTol;
  return r;
}

DiamondResult diamond_distance(const Channel& n, const Channel& m) {
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out()) {
    throw DimensionMismatch("diamond_distance: channel dimensions differ");
  }
  const Index da = n.dim_in();
  const Index db = n.dim_out();
  const Index side = da * db;
  const ComplexMatrix j = n.choi() - m.choi();

  sdp::Model model;
  const sdp::AffineMatrix z = model.add_psd(side);
  const sdp::AffineMatrix p = model.add_psd(side);
  const sdp::AffineMatrix q = model.add_psd(da);
  const sdp::AffineScalar t = model.add_nonnegative(1)[0];
  sdp::AffineMatrix zj = z - p;
  zj -= j;
  model.equal_hermitian(zj);
  sdp::AffineMatrix top(da, da);
  for (Index i = 0; i < da; ++i) top(i, i).re = t;
  model.equal_hermitian(top - sdp::trace_out_second(z, da, db) - q);
  model.minimize(2.0 * t);
  const sdp::Solution sol = model.solve();
  DiamondResult r;
  r.report = sol.report;
  r.value = std::max(0.0, sol.report.primal_value);
  r.certified = sol.report.status == sdp::Status::Optimal &&
                std::abs(sol.report.gap) <= kDiamondCertTol;
  return r;
}

double relative_entropy_at(const Channel& n, const Channel& m, const ComplexMatrix& sigma,
                           Index dim_anc) {
  const ComplexMatrix a =
      hermitize(apply_with_ancilla(n.choi(), n.dim_in(), n.dim_out(), sigma, dim_anc));
  const ComplexMatrix b =
      hermitize(apply_with_ancilla(m.choi(), m.dim_in(), m.dim_out(), sigma, dim_anc));
  return relative_entropy(a, b);
}

namespace {

/// Fréchet derivative of log at σ = V diag(μ) V† in direction x.
ComplexMatrix log_derivative(const HermSolver& es, const ComplexMatrix& x, double floor) {
  const RealVector mu = es.eigenvalues().cwiseMax(floor);
  const ComplexMatrix& v = es.eigenvectors();
  ComplexMatrix rotated = v.adjoint() * x * v;
  for (Index i = 0; i < mu.size(); ++i) {
    for (Index k = 0; k < mu.size(); ++k) {
      const double gap = mu(i) - mu(k);
      const double l = std::abs(gap) > 1e-12 * std::max(mu(i), mu(k))
                           ? (std::log(mu(i)) - std::log(mu(k))) / gap
                           : 1.0 / mu(i);
      rotated(i, k) *= l;
    }
  }
  return v * rotated * v.adjoint();
}

class RelEntAscent {
 public:
  RelEntAscent(const Channel& n, const Channel& m)
      : n_(n), m_(m), anc_(n.dim_in()), fn_(n.choi(), n.dim_in(), n.dim_out(), anc_),
        fm_(m.choi(), m.dim_in(), m.dim_out(), anc_) {}

  double value(const ComplexVector& psi) const {
    return relative_entropy_at(n_, m_, psi * psi.adjoint(), anc_);
  }

  /// Tangent gradient of ψ ↦ D(N(ψψ†) ‖ M(ψψ†)) on the unit sphere.
  ComplexVector gradient(const ComplexVector& psi) const {
    const ComplexMatrix rho = psi * psi.adjoint();
    const ComplexMatrix a = hermitize(fn_.forward(rho));
    const ComplexMatrix b = hermitize(fm_.forward(rho));
    const HermSolver ea(a);
    const HermSolver eb(b);
    constexpr double kFloor = 1e-12;
    RealVector la(ea.eigenvalues().size());
    for (Index k = 0; k < la.size(); ++k) {
      const double p = ea.eigenvalues()(k);
      la(k) = p > tol::support ? std::log(p) : 0.0;
    }
    const RealVector lb = eb.eigenvalues().cwiseMax(kFloor).array().log();
    const ComplexMatrix log_a = ea.eigenvectors() * la.asDiagonal() * ea.eigenvectors().adjoint();
    const ComplexMatrix log_b = eb.eigenvectors() * lb.asDiagonal() * eb.eigenvectors().adjoint();
    const ComplexMatrix gamma =
        hermitize(fn_.adjoint(log_a - log_b) - fm_.adjoint(log_derivative(eb, a, kFloor)));
    const ComplexVector g = gamma * psi;
    const cplx along = psi.dot(g);
    return 2.0 * (g - along * psi);
  }

  std::pair<double, ComplexVector> run(ComplexVector psi, int max_iter) const {
    double f = value(psi);
    double eta = 1.0;
    for (int it = 0; it < max_iter && std::isfinite(f); ++it) {
      const ComplexVector g = gradient(psi);
      const double g2 = g.squaredNorm();
      if (!std::isfinite(g2) || g2 < 1e-18) break;
      bool accepted = false;
      while (eta > 1e-12) {
        ComplexVector trial = psi + eta * g;
        trial.normalize();
        const double ft = value(trial);
        if (ft >= f + 1e-4 * eta * g2) {
          const double gain = ft - f;
          psi = trial;
          f = ft;
          accepted = true;
          eta = std::min(2.0 * eta, 1e3);
          if (gain < 1e-13) it = max_iter;
          break;
        }
        eta /= 2.0;
      }
      if (!accepted) break;
    }
    return {f, psi};
  }

  Index state_dim() const { return n_.dim_in() * anc_; }

 private:
  const Channel& n_;
  const Channel& m_;
  Index anc_;
  AncillaMap fn_;
  AncillaMap fm_;
};

}  // namespace

RelativeEntropyResult channel_relative_entropy(const Channel& n, const Channel& m,
                                               const RelativeEntropyOptions& opts) {
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out()) {
    throw DimensionMismatch("channel_relative_entropy: channel dimensions differ");
  }
  const RelEntAscent ascent(n, m);
  const Index da = n.dim_in();
  const Index d = ascent.state_dim();
  std::vector<ComplexVector> starts;
  ComplexVector mes = ComplexVector::Zero(d);
  for (Index i = 0; i < da; ++i) mes(i * da + i) = 1.0 / std::sqrt(static_cast<double>(da));
  starts.push_back(mes);
  Rng rng(derive_seed(opts.seed, 0x7265));
  while (static_cast<int>(starts.size()) < std::max(opts.restarts, 1)) {
    starts.push_back(random_pure_state(rng, d));
  }
  RelativeEntropyResult best;
  best.lower_bound = -1.0;
  for (const auto& s : starts) {
    const auto [f, psi] = ascent.run(s, opts.max_iter);
    if (f > best.lower_bound) {
      best.lower_bound = f;
      best.witness.state = psi;
    }
    if (std::isinf(f)) break;
  }
  best.lower_bound = std::max(best.lower_bound, 0.0);
  best.witness.dim_in = da;
  best.witness.dim_anc = da;
  best.witness.achieved_value = best.lower_bound;
  return best;
}

double divergence(DivergenceKind kind, const Channel& n, const Channel& m, std::uint64_t seed) {
  switch (kind) {
    case DivergenceKind::ChannelTrace: {
      TraceDistanceOptions o;
      o.seed = seed;
      return channel_trace_distance(n, m, o).value;
    }
    case DivergenceKind::Diamond: {
      const DiamondResult r = diamond_distance(n, m);
      if (r.report.status != sdp::Status::Optimal) {
        throw SolverFailure("diamond_distance: " + sdp::to_string(r.report.status));
      }
      return r.value;
    }
    case DivergenceKind::ChannelRelEnt: {
      RelativeEntropyOptions o;
      o.seed = seed;
      return channel_relative_entropy(n, m, o).lower_bound;
    }
  }
  return 0.0;
}

}  // namespace dyncoh
