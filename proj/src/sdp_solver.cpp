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

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "dyncoh/sdp.hpp"

namespace dyncoh::sdp {

Index coordinate_count(const Block& block) {
  switch (block.kind) {
    case BlockKind::Hermitian:
      return block.size * block.size;
    case BlockKind::Symmetric:
      return block.size * (block.size + 1) / 2;
    case BlockKind::Nonnegative:
      return block.size;
  }
  return 0;
}

Index upper_index(Index n, Index a, Index b) { return a * n - a * (a - 1) / 2 + (b - a); }

Index strict_upper_index(Index n, Index a, Index b) {
  return a * (n - 1) - a * (a - 1) / 2 + (b - a - 1);
}

Index ConicProgram::coordinate_count() const {
  Index total = 0;
  for (const Block& b : blocks) total += sdp::coordinate_count(b);
  return total;
}

Index ConicProgram::block_offset(std::size_t block) const {
  Index offset = 0;
  for (std::size_t k = 0; k < block; ++k) offset += sdp::coordinate_count(blocks[k]);
  return offset;
}

void ConicProgram::validate() const {
  const Index total = coordinate_count();
  auto check = [total](const LinearFunctional& f) {
    for (const auto& [idx, coef] : f.terms) {
      if (idx < 0 || idx >= total) throw Error("ConicProgram: coordinate index out of range");
      if (!std::isfinite(coef)) throw Error("ConicProgram: non-finite coefficient");
    }
  };
  for (const Block& b : blocks) {
    if (b.size <= 0) throw Error("ConicProgram: block sizes must be positive");
  }
  check(objective);
  if (equalities.size() != rhs.size()) throw Error("ConicProgram: equality/rhs count mismatch");
  for (const auto& f : equalities) check(f);
  for (double v : rhs) {
    if (!std::isfinite(v)) throw Error("ConicProgram: non-finite right-hand side");
  }
}

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "Optimal";
    case Status::MaxIter:
      return "MaxIter";
    case Status::Infeasible:
      return "Infeasible";
    case Status::NumericalTrouble:
      return "NumericalTrouble";
  }
  return "Unknown";
}

namespace {

/// Weight on Y(r, c), r ≤ c, of the embedded real symmetric block: the
/// functional value is Σ w · Y(r, c).
struct Entry {
  int block;
  int r;
  int c;
  double w;
};

using Row = std::vector<Entry>;
using Blocks = std::vector<RealMatrix>;

struct Lowered {
  std::vector<Index> sizes;           // internal real block sides
  std::vector<Row> coordinate_rows;   // per user coordinate
  std::vector<std::size_t> first_internal;  // per user block
};

Lowered lower_blocks(const ConicProgram& p) {
  Lowered out;
  for (const Block& blk : p.blocks) {
    out.first_internal.push_back(out.sizes.size());
    const int n = static_cast<int>(blk.size);
    switch (blk.kind) {
      case BlockKind::Hermitian: {
        const int ib = static_cast<int>(out.sizes.size());
        out.sizes.push_back(2 * blk.size);
        for (int a = 0; a < n; ++a) {
          for (int b = a; b < n; ++b) {
            out.coordinate_rows.push_back({{ib, a, b, 0.5}, {ib, n + a, n + b, 0.5}});
          }
        }
        for (int a = 0; a < n; ++a) {
          for (int b = a + 1; b < n; ++b) {
            // Im x_ab = (Y(n+a, b) − Y(a, n+b)) / 2
            out.coordinate_rows.push_back({{ib, b, n + a, 0.5}, {ib, a, n + b, -0.5}});
          }
        }
        break;
      }
      case BlockKind::Symmetric: {
        const int ib = static_cast<int>(out.sizes.size());
        out.sizes.push_back(blk.size);
        for (int a = 0; a < n; ++a) {
          for (int b = a; b < n; ++b) out.coordinate_rows.push_back({{ib, a, b, 1.0}});
        }
        break;
      }
      case BlockKind::Nonnegative: {
        for (int i = 0; i < n; ++i) {
          const int ib = static_cast<int>(out.sizes.size());
          out.sizes.push_back(1);
          out.coordinate_rows.push_back({{ib, 0, 0, 1.0}});
        }
        break;
      }
    }
  }
  return out;
}

Row lower_functional(const LinearFunctional& f, const Lowered& low) {
  std::map<std::tuple<int, int, int>, double> acc;
  for (const auto& [idx, coef] : f.terms) {
    for (const Entry& e : low.coordinate_rows[static_cast<std::size_t>(idx)]) {
      acc[{e.block, e.r, e.c}] += coef * e.w;
    }
  }
  Row row;
  for (const auto& [key, w] : acc) {
    if (w != 0.0) row.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
  }
  return row;
}

Blocks zeros(const std::vector<Index>& sizes) {
  Blocks out;
  out.reserve(sizes.size());
  for (Index n : sizes) out.push_back(RealMatrix::Zero(n, n));
  return out;
}

Blocks identities(const std::vector<Index>& sizes) {
  Blocks out;
  out.reserve(sizes.size());
  for (Index n : sizes) out.push_back(RealMatrix::Identity(n, n));
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double norm(const Blocks& a) { return std::sqrt(inner(a, a)); }

void axpy(double alpha, const Blocks& x, Blocks& y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

Blocks combine(double a, const Blocks& x, double b, const Blocks& y) {
  Blocks out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k] + b * y[k];
  return out;
}

double evaluate(const Row& row, const Blocks& x) {
  double s = 0.0;
  for (const Entry& e : row) s += e.w * x[static_cast<std::size_t>(e.block)](e.r, e.c);
  return s;
}

void accumulate(const Row& row, double scale, Blocks& out) {
  for (const Entry& e : row) {
    RealMatrix& m = out[static_cast<std::size_t>(e.block)];
    if (e.r == e.c) {
      m(e.r, e.r) += scale * e.w;
    } else {
      m(e.r, e.c) += 0.5 * scale * e.w;
      m(e.c, e.r) += 0.5 * scale * e.w;
    }
  }
}

/// Working data for the interior-point iterations.
class Engine {
 public:
  Engine(std::vector<Index> sizes, std::vector<Row> rows, RealVector b, Blocks c)
      : sizes_(std::move(sizes)), rows_(std::move(rows)), b_(std::move(b)), c_(std::move(c)) {
    by_block_.resize(sizes_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::map<int, Row> split;
      for (const Entry& e : rows_[i]) split[e.block].push_back(e);
      for (auto& [blk, part] : split) {
        by_block_[static_cast<std::size_t>(blk)].push_back({i, std::move(part)});
      }
    }
    nu_ = 0.0;
    for (Index n : sizes_) nu_ += static_cast<double>(n);
  }

  Index m() const { return static_cast<Index>(rows_.size()); }

  RealVector apply_a(const Blocks& x) const {
    RealVector out(m());
    for (Index i = 0; i < m(); ++i) out(i) = evaluate(rows_[static_cast<std::size_t>(i)], x);
    return out;
  }

  Blocks apply_at(const RealVector& y) const {
    Blocks out = zeros(sizes_);
    for (Index i = 0; i < m(); ++i) {
      if (y(i) != 0.0) accumulate(rows_[static_cast<std::size_t>(i)], y(i), out);
    }
    return out;
  }

  /// Schur complement M_ij = ⟨A_i, W A_j W⟩.
  RealMatrix schur(const Blocks& w) const {
    RealMatrix mat = RealMatrix::Zero(m(), m());
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      const RealMatrix& wk = w[k];
      const Index n = sizes_[k];
      const auto& touching = by_block_[k];
      if (touching.empty()) continue;
      RealMatrix t(n, n);
      for (const auto& [j, part] : touching) {
        t.setZero();
        for (const Entry& e : part) {
          if (e.r == e.c) {
            t.noalias() += e.w * wk.col(e.r) * wk.row(e.r);
          } else {
            t.noalias() += 0.5 * e.w * wk.col(e.r) * wk.row(e.c);
            t.noalias() += 0.5 * e.w * wk.col(e.c) * wk.row(e.r);
          }
        }
        for (const auto& [i, ipart] : touching) {
          if (i < j) continue;
          double s = 0.0;
          for (const Entry& e : ipart) s += e.w * t(e.r, e.c);
          mat(static_cast<Index>(i), static_cast<Index>(j)) += s;
        }
      }
    }
    for (Index i = 0; i < m(); ++i) {
      for (Index j = i + 1; j < m(); ++j) mat(i, j) = mat(j, i);
    }
    return mat;
  }

  Solution run(const SolveOptions& opt, Blocks& x_out, RealVector& y_out);

 private:
  std::vector<Index> sizes_;
  std::vector<Row> rows_;
  RealVector b_;
  Blocks c_;
  std::vector<std::vector<std::pair<std::size_t, Row>>> by_block_;
  double nu_ = 0.0;
};

struct Scaling {
  RealMatrix g;      // W = g gᵀ
  RealMatrix g_inv;
  RealMatrix w;
  RealVector lambda;
};

bool nt_scaling(const RealMatrix& x, const RealMatrix& s, Scaling& out) {
  Eigen::LLT<RealMatrix> lx(x);
  Eigen::LLT<RealMatrix> ls(s);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
  const RealMatrix l = lx.matrixL();
  const RealMatrix r = ls.matrixL();
  Eigen::JacobiSVD<RealMatrix> svd(r.transpose() * l, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sigma = svd.singularValues();
  if ((sigma.array() <= 0.0).any() || !sigma.allFinite()) return false;
  const RealVector inv_sqrt = sigma.array().rsqrt();
  const RealVector sqrt_s = sigma.array().sqrt();
  out.g = l * svd.matrixV() * inv_sqrt.asDiagonal();
  const RealMatrix l_inv = l.triangularView<Eigen::Lower>().solve(
      RealMatrix::Identity(x.rows(), x.cols()));
  out.g_inv = sqrt_s.asDiagonal() * svd.matrixV().transpose() * l_inv;
  out.w = out.g * out.g.transpose();
  out.w = (out.w + out.w.transpose()).eval() / 2.0;
  out.lambda = sigma;
  return true;
}

/// Largest α with diag(λ) + α d ⪰ 0 (d symmetric), or +∞.
double max_step(const RealVector& lambda, const RealMatrix& d) {
  const RealVector inv_sqrt = lambda.array().rsqrt();
  const RealMatrix scaled = inv_sqrt.asDiagonal() * d * inv_sqrt.asDiagonal();
  double min_eval;
  if (scaled.rows() == 1) {
    min_eval = scaled(0, 0);
  } else {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es((scaled + scaled.transpose()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
    min_eval = es.eigenvalues()(0);
  }
  return min_eval >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / min_eval;
}

class SchurSolver {
 public:
  bool factor(const RealMatrix& m) {
    llt_.compute(m);
    if (llt_.info() == Eigen::Success) {
      use_llt_ = true;
      return true;
    }
    const double reg = 1e-13 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    RealMatrix shifted = m;
    shifted.diagonal().array() += reg;
    llt_.compute(shifted);
    if (llt_.info() == Eigen::Success) {
      use_llt_ = true;
      return true;
    }
    use_llt_ = false;
    lu_.compute(m);
    return lu_.rank() == m.rows();
  }
  RealVector solve(const RealVector& rhs) const {
    if (use_llt_) return llt_.solve(rhs);
    return lu_.solve(rhs);
  }

 private:
  bool use_llt_ = true;
  Eigen::LLT<RealMatrix> llt_;
  Eigen::FullPivLU<RealMatrix> lu_;
};

struct Direction {
  Blocks dx;
  Blocks ds;
  RealVector dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

Solution Engine::run(const SolveOptions& opt, Blocks& x, RealVector& y) {
  Solution sol;
  SolveReport& rep = sol.report;

  x = identities(sizes_);
  Blocks s = identities(sizes_);
  y = RealVector::Zero(m());
  double tau = 1.0;
  double kappa = 1.0;
  auto finish = [&]() -> Solution {
    for (auto& blk : x) blk /= tau;
    y /= tau;
    return sol;
  };

  const double b_norm = b_.norm();
  const double c_norm = norm(c_);
  int stalls = 0;

  for (int it = 0; it <= opt.max_iter; ++it) {
    rep.iterations = it;
    const RealVector ax = apply_a(x);
    const Blocks aty = apply_at(y);
    const RealVector rp = tau * b_ - ax;
    Blocks rd = aty;
    axpy(1.0, s, rd);
    axpy(-tau, c_, rd);
    const double cx = inner(c_, x);
    const double by = b_.dot(y);
    const double rg = cx - by + kappa;

    rep.primal_residual = rp.norm() / tau / (1.0 + b_norm);
    rep.dual_residual = norm(rd) / tau / (1.0 + c_norm);
    rep.primal_value = cx / tau;
    rep.dual_value = by / tau;
    rep.gap = rep.primal_value - rep.dual_value;
    const double rel_gap = std::abs(rep.gap) / (1.0 + std::abs(rep.primal_value));

    if (!std::isfinite(rep.primal_value) || !std::isfinite(rep.dual_value)) {
      rep.status = Status::NumericalTrouble;
      return finish();
    }
    if (rep.primal_residual <= opt.feas_tol && rep.dual_residual <= opt.feas_tol &&
        rel_gap <= opt.gap_tol) {
      rep.status = Status::Optimal;
      return finish();
    }
    if (it > 3) {
      Blocks farkas = aty;
      axpy(1.0, s, farkas);
      if (by > 0.0 && norm(farkas) / by <= opt.feas_tol * std::max(1.0, c_norm)) {
        rep.status = Status::Infeasible;
        rep.primal_infeasible = true;
        return finish();
      }
      if (cx < 0.0 && ax.norm() / (-cx) <= opt.feas_tol * std::max(1.0, b_norm)) {
        rep.status = Status::Infeasible;
        rep.dual_infeasible = true;
        return finish();
      }
    }
    if (it == opt.max_iter) break;

    const double mu = (inner(x, s) + tau * kappa) / (nu_ + 1.0);

    std::vector<Scaling> sc(sizes_.size());
    Blocks w(sizes_.size());
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      if (!nt_scaling(x[k], s[k], sc[k])) {
        rep.status = Status::NumericalTrouble;
        return finish();
      }
      w[k] = sc[k].w;
    }
    SchurSolver schur_solver;
    if (!schur_solver.factor(schur(w))) {
      rep.status = Status::NumericalTrouble;
      return finish();
    }

    auto sandwich = [&](const Blocks& v) {
      Blocks out(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) out[k] = w[k] * v[k] * w[k];
      return out;
    };
    const Blocks wcw = sandwich(c_);
    const Blocks wrdw = sandwich(rd);
    const RealVector v = schur_solver.solve(apply_a(wcw) + b_);
    Blocks d1 = sandwich(apply_at(v));
    axpy(-1.0, wcw, d1);
    const double denom = inner(c_, d1) - b_.dot(v) - kappa / tau;

    // Solves the linearized system for a scaled complementarity target.
    auto newton = [&](double eta, const Blocks& rtilde, double rtau) {
      Direction d;
      Blocks grg(sizes_.size());
      for (std::size_t k = 0; k < sizes_.size(); ++k) {
        grg[k] = sc[k].g * rtilde[k] * sc[k].g.transpose();
      }
      Blocks base = grg;
      axpy(eta, wrdw, base);
      const RealVector u = schur_solver.solve(eta * rp - apply_a(base));
      Blocks d0 = sandwich(apply_at(u));
      axpy(1.0, base, d0);
      d.dtau = (-eta * rg - inner(c_, d0) + b_.dot(u) - rtau / tau) / denom;
      d.dy = u + d.dtau * v;
      d.dx = d0;
      axpy(d.dtau, d1, d.dx);
      d.ds = combine(-eta, rd, d.dtau, c_);
      axpy(-1.0, apply_at(d.dy), d.ds);
      d.dkappa = (rtau - kappa * d.dtau) / tau;
      return d;
    };

    auto step_length = [&](const Direction& d, Blocks* dx_scaled, Blocks* ds_scaled) {
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < sizes_.size(); ++k) {
        const RealMatrix dxs = sc[k].g_inv * d.dx[k] * sc[k].g_inv.transpose();
        const RealMatrix dss = sc[k].g.transpose() * d.ds[k] * sc[k].g;
        alpha = std::min(alpha, max_step(sc[k].lambda, dxs));
        alpha = std::min(alpha, max_step(sc[k].lambda, dss));
        if (dx_scaled) (*dx_scaled)[k] = dxs;
        if (ds_scaled) (*ds_scaled)[k] = dss;
      }
      if (d.dtau < 0.0) alpha = std::min(alpha, -tau / d.dtau);
      if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa / d.dkappa);
      return alpha;
    };

    // Predictor.
    Blocks rtilde(sizes_.size());
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      rtilde[k] = RealMatrix((-sc[k].lambda).asDiagonal());
    }
    const Direction aff = newton(1.0, rtilde, -tau * kappa);
    Blocks dxa(sizes_.size()), dsa(sizes_.size());
    const double alpha_aff = std::min(1.0, step_length(aff, &dxa, &dsa));
    const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

    // Corrector.
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      const RealVector& lam = sc[k].lambda;
      const RealMatrix corr = (dxa[k] * dsa[k] + dsa[k] * dxa[k]) / 2.0;
      RealMatrix target = -corr;
      for (Index i = 0; i < lam.size(); ++i) target(i, i) += sigma * mu - lam(i) * lam(i);
      for (Index i = 0; i < lam.size(); ++i) {
        for (Index j = 0; j < lam.size(); ++j) target(i, j) *= 2.0 / (lam(i) + lam(j));
      }
      rtilde[k] = target;
    }
    const Direction dir =
        newton(1.0 - sigma, rtilde, sigma * mu - tau * kappa - aff.dtau * aff.dkappa);
    const double alpha = std::min(1.0, 0.99 * step_length(dir, nullptr, nullptr));
    if (!std::isfinite(alpha) || alpha < 1e-10) {
      if (++stalls > 3) {
        rep.status = Status::NumericalTrouble;
        return finish();
      }
    }

    axpy(alpha, dir.dx, x);
    axpy(alpha, dir.ds, s);
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
      x[k] = (x[k] + x[k].transpose()).eval() / 2.0;
      s[k] = (s[k] + s[k].transpose()).eval() / 2.0;
    }
    y += alpha * dir.dy;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
  }
  rep.status = Status::MaxIter;
  return finish();
}

/// Greedy pivoted Cholesky on the Gram matrix of the (normalized) rows;
/// returns the indices of a maximal independent subset in increasing order.
std::vector<Index> independent_rows(const RealMatrix& gram, double threshold) {
  const Index m = gram.rows();
  RealVector diag = gram.diagonal();
  RealMatrix l = RealMatrix::Zero(m, m);
  std::vector<bool> chosen(static_cast<std::size_t>(m), false);
  std::vector<Index> picked;
  for (Index k = 0; k < m; ++k) {
    Index p = -1;
    double best = threshold;
    for (Index i = 0; i < m; ++i) {
      if (!chosen[static_cast<std::size_t>(i)] && diag(i) > best) {
        best = diag(i);
        p = i;
      }
    }
    if (p < 0) break;
    chosen[static_cast<std::size_t>(p)] = true;
    picked.push_back(p);
    const double piv = std::sqrt(diag(p));
    const Index kk = static_cast<Index>(picked.size()) - 1;
    for (Index i = 0; i < m; ++i) {
      if (chosen[static_cast<std::size_t>(i)]) continue;
      double v = gram(i, p);
      for (Index j = 0; j < kk; ++j) v -= l(i, j) * l(p, j);
      l(i, kk) = v / piv;
      diag(i) -= l(i, kk) * l(i, kk);
    }
    l(p, kk) = piv;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

Solution solve(const ConicProgram& program, const SolveOptions& options) {
  program.validate();
  const Lowered low = lower_blocks(program);

  // Lower equalities and drop empty ones (0 = b).
  const std::size_t m0 = program.equalities.size();
  std::vector<Row> rows(m0);
  for (std::size_t i = 0; i < m0; ++i) rows[i] = lower_functional(program.equalities[i], low);

  // Internal coordinate numbering for the Gram matrix.
  std::vector<Index> block_base(low.sizes.size());
  Index total_internal = 0;
  for (std::size_t k = 0; k < low.sizes.size(); ++k) {
    block_base[k] = total_internal;
    total_internal += low.sizes[k] * (low.sizes[k] + 1) / 2;
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t i = 0; i < m0; ++i) {
    for (const Entry& e : rows[i]) {
      const Index n = low.sizes[static_cast<std::size_t>(e.block)];
      const Index col = block_base[static_cast<std::size_t>(e.block)] + upper_index(n, e.r, e.c);
      // Off-diagonal entries carry w/2 twice in the symmetric matrix.
      const double v = e.r == e.c ? e.w : e.w / std::sqrt(2.0);
      trips.emplace_back(static_cast<Index>(i), col, v);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_sparse(static_cast<Index>(m0), total_internal);
  a_sparse.setFromTriplets(trips.begin(), trips.end());
  const RealMatrix gram_raw = RealMatrix(a_sparse * a_sparse.transpose());

  Solution sol;
  SolveReport& rep = sol.report;
  const Index n_coords = program.coordinate_count();
  sol.x = RealVector::Zero(n_coords);
  sol.y = RealVector::Zero(static_cast<Index>(m0));

  RealVector b_all(static_cast<Index>(m0));
  for (std::size_t i = 0; i < m0; ++i) b_all(static_cast<Index>(i)) = program.rhs[i];

  RealVector scale = RealVector::Ones(static_cast<Index>(m0));
  std::vector<Index> candidates;
  for (Index i = 0; i < static_cast<Index>(m0); ++i) {
    const double nrm = std::sqrt(gram_raw(i, i));
    if (nrm == 0.0) {
      if (std::abs(b_all(i)) > 1e-12) {
        rep.status = Status::Infeasible;
        rep.primal_infeasible = true;
        return sol;
      }
      continue;
    }
    scale(i) = 1.0 / nrm;
    candidates.push_back(i);
  }
  const Index mc = static_cast<Index>(candidates.size());
  RealMatrix gram(mc, mc);
  for (Index i = 0; i < mc; ++i) {
    for (Index j = 0; j < mc; ++j) {
      gram(i, j) = gram_raw(candidates[i], candidates[j]) * scale(candidates[i]) *
                   scale(candidates[j]);
    }
  }
  const std::vector<Index> local_keep = independent_rows(gram, 1e-10);
  std::vector<Index> keep;
  for (Index i : local_keep) keep.push_back(candidates[static_cast<std::size_t>(i)]);
  rep.dropped_equalities = static_cast<Index>(m0) - static_cast<Index>(keep.size());

  // Dependent rows must be consistent with the kept ones.
  if (!local_keep.empty() && static_cast<Index>(local_keep.size()) < mc) {
    const Index k = static_cast<Index>(local_keep.size());
    RealMatrix gkk(k, k);
    RealVector bk(k);
    for (Index i = 0; i < k; ++i) {
      bk(i) = b_all(keep[i]) * scale(keep[i]);
      for (Index j = 0; j < k; ++j) gkk(i, j) = gram(local_keep[i], local_keep[j]);
    }
    Eigen::LDLT<RealMatrix> ldlt(gkk);
    std::vector<bool> is_kept(static_cast<std::size_t>(mc), false);
    for (Index i : local_keep) is_kept[static_cast<std::size_t>(i)] = true;
    for (Index r = 0; r < mc; ++r) {
      if (is_kept[static_cast<std::size_t>(r)]) continue;
      RealVector g(k);
      for (Index i = 0; i < k; ++i) g(i) = gram(local_keep[i], r);
      const RealVector coef = ldlt.solve(g);
      const double predicted = coef.dot(bk);
      const double actual = b_all(candidates[r]) * scale(candidates[r]);
      if (std::abs(predicted - actual) > 1e-8 * (1.0 + bk.cwiseAbs().maxCoeff())) {
        rep.status = Status::Infeasible;
        rep.primal_infeasible = true;
        return sol;
      }
    }
  }

  std::vector<Row> kept_rows;
  RealVector b(static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Row row = rows[static_cast<std::size_t>(keep[i])];
    for (Entry& e : row) e.w *= scale(keep[i]);
    kept_rows.push_back(std::move(row));
    b(static_cast<Index>(i)) = b_all(keep[i]) * scale(keep[i]);
  }
  Blocks c = zeros(low.sizes);
  accumulate(lower_functional(program.objective, low), 1.0, c);

  Engine engine(low.sizes, std::move(kept_rows), b, c);
  Blocks x;
  RealVector y;
  Solution run = engine.run(options, x, y);
  const Index dropped = rep.dropped_equalities;
  sol.report = run.report;
  sol.report.dropped_equalities = dropped;
  sol.report.primal_value += program.objective_offset;
  sol.report.dual_value += program.objective_offset;

  for (Index i = 0; i < n_coords; ++i) {
    sol.x(i) = evaluate(low.coordinate_rows[static_cast<std::size_t>(i)], x);
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    sol.y(keep[i]) = y(static_cast<Index>(i)) * scale(keep[i]);
  }

  sol.blocks.reserve(program.blocks.size());
  for (std::size_t kb = 0; kb < program.blocks.size(); ++kb) {
    const Block& blk = program.blocks[kb];
    const std::size_t ib = low.first_internal[kb];
    const Index n = blk.size;
    switch (blk.kind) {
      case BlockKind::Hermitian: {
        const RealMatrix& yb = x[ib];
        ComplexMatrix m(n, n);
        for (Index a = 0; a < n; ++a) {
          for (Index bb = 0; bb < n; ++bb) {
            const double re = (yb(a, bb) + yb(n + a, n + bb)) / 2.0;
            const double im = (yb(n + a, bb) - yb(a, n + bb)) / 2.0;
            m(a, bb) = cplx(re, im);
          }
        }
        sol.blocks.push_back(m);
        break;
      }
      case BlockKind::Symmetric:
        sol.blocks.push_back(x[ib].cast<cplx>());
        break;
      case BlockKind::Nonnegative: {
        ComplexMatrix v(n, 1);
        for (Index i = 0; i < n; ++i) v(i, 0) = x[ib + static_cast<std::size_t>(i)](0, 0);
        sol.blocks.push_back(v);
        break;
      }
    }
  }
  return sol;
}

}  // namespace dyncoh::sdp
