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

#include "dyncoh/channel.hpp"

#include <cmath>

#include "dyncoh/random.hpp"

namespace dyncoh {

namespace {

constexpr double kTraceTol = 1e-8;

void require_square(const ComplexMatrix& m, Index side, const char* what) {
  if (m.rows() != side || m.cols() != side) {
    throw DimensionMismatch(std::string(what) + ": expected a " + std::to_string(side) + "x" +
                            std::to_string(side) + " matrix");
  }
}

}  // namespace

Channel Channel::from_choi(ComplexMatrix choi, Index dim_in, Index dim_out) {
  if (dim_in <= 0 || dim_out <= 0) throw DimensionMismatch("channel dimensions must be positive");
  require_square(choi, dim_in * dim_out, "Channel::from_choi");
  if (!choi.allFinite()) throw InvariantViolation("choi.finite", kInfinity);
  const double herm = hermiticity_residual(choi);
  if (herm > tol::herm) throw InvariantViolation("choi.hermitian", herm);
  choi = (choi + choi.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(choi, Eigen::EigenvaluesOnly);
  const double min_eval = solver.eigenvalues().minCoeff();
  if (min_eval < -tol::psd) throw InvariantViolation("choi.psd", -min_eval);
  const ComplexMatrix reduced = trace_out_second(choi, dim_in, dim_out);
  const double tp = (reduced - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (tp > kTraceTol) throw InvariantViolation("choi.trace_preserving", tp);
  return Channel(std::move(choi), dim_in, dim_out);
}

ComplexMatrix Channel::operator()(const ComplexMatrix& x) const {
  return apply_map(choi_, dim_in_, dim_out_, x);
}

DephasingSpec DephasingSpec::computational(Index dim) {
  return DephasingSpec{dim, ComplexMatrix::Identity(dim, dim)};
}

void DephasingSpec::validate() const {
  if (dim <= 0 || basis.rows() != dim || basis.cols() != dim) {
    throw DimensionMismatch("DephasingSpec: basis must be dim x dim");
  }
  const double r =
      (basis.adjoint() * basis - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (r > 1e-10) throw InvariantViolation("basis.unitary", r);
}

Bases Bases::computational(Index dim_in, Index dim_out) {
  return Bases{DephasingSpec::computational(dim_in), DephasingSpec::computational(dim_out)};
}

bool Bases::is_computational() const {
  return in.basis.isIdentity(0.0) && out.basis.isIdentity(0.0);
}

ComplexMatrix apply_map(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                        const ComplexMatrix& x) {
  require_square(choi, dim_in * dim_out, "apply_map (choi)");
  require_square(x, dim_in, "apply_map (input)");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out, dim_out);
  for (Index i = 0; i < dim_in; ++i) {
    for (Index j = 0; j < dim_in; ++j) {
      if (x(i, j) != cplx(0.0, 0.0)) {
        out += x(i, j) * choi.block(i * dim_out, j * dim_out, dim_out, dim_out);
      }
    }
  }
  return out;
}

ComplexMatrix apply_map_adjoint(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                const ComplexMatrix& y) {
  require_square(choi, dim_in * dim_out, "apply_map_adjoint (choi)");
  require_square(y, dim_out, "apply_map_adjoint (input)");
  ComplexMatrix out(dim_in, dim_in);
  for (Index i = 0; i < dim_in; ++i) {
    for (Index j = 0; j < dim_in; ++j) {
      out(i, j) = choi.block(i * dim_out, j * dim_out, dim_out, dim_out).cwiseProduct(y.conjugate()).sum();
      out(i, j) = std::conj(out(i, j));
    }
  }
  return out;
}

ComplexMatrix apply_with_ancilla(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                 const ComplexMatrix& x, Index dim_anc) {
  require_square(choi, dim_in * dim_out, "apply_with_ancilla (choi)");
  require_square(x, dim_in * dim_anc, "apply_with_ancilla (input)");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out * dim_anc, dim_out * dim_anc);
  for (Index a = 0; a < dim_in; ++a) {
    for (Index ap = 0; ap < dim_in; ++ap) {
      const auto jblock = choi.block(a * dim_out, ap * dim_out, dim_out, dim_out);
      for (Index r = 0; r < dim_anc; ++r) {
        for (Index rp = 0; rp < dim_anc; ++rp) {
          const cplx coeff = x(a * dim_anc + r, ap * dim_anc + rp);
          if (coeff == cplx(0.0, 0.0)) continue;
          for (Index b = 0; b < dim_out; ++b) {
            for (Index bp = 0; bp < dim_out; ++bp) {
              out(b * dim_anc + r, bp * dim_anc + rp) += coeff * jblock(b, bp);
            }
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix apply_with_ancilla_adjoint(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                         const ComplexMatrix& y, Index dim_anc) {
  require_square(choi, dim_in * dim_out, "apply_with_ancilla_adjoint (choi)");
  require_square(y, dim_out * dim_anc, "apply_with_ancilla_adjoint (input)");
  ComplexMatrix out = ComplexMatrix::Zero(dim_in * dim_anc, dim_in * dim_anc);
  for (Index a = 0; a < dim_in; ++a) {
    for (Index ap = 0; ap < dim_in; ++ap) {
      const auto jblock = choi.block(a * dim_out, ap * dim_out, dim_out, dim_out);
      for (Index r = 0; r < dim_anc; ++r) {
        for (Index rp = 0; rp < dim_anc; ++rp) {
          cplx acc(0.0, 0.0);
          for (Index b = 0; b < dim_out; ++b) {
            for (Index bp = 0; bp < dim_out; ++bp) {
              acc += std::conj(jblock(b, bp)) * y(b * dim_anc + r, bp * dim_anc + rp);
            }
          }
          out(a * dim_anc + r, ap * dim_anc + rp) = acc;
        }
      }
    }
  }
  return out;
}

ComplexMatrix compose_choi(const ComplexMatrix& second, Index second_out, const ComplexMatrix& first,
                           Index first_in, Index first_out) {
  require_square(first, first_in * first_out, "compose (first)");
  require_square(second, first_out * second_out, "compose (second)");
  ComplexMatrix out(first_in * second_out, first_in * second_out);
  for (Index i = 0; i < first_in; ++i) {
    for (Index j = 0; j < first_in; ++j) {
      out.block(i * second_out, j * second_out, second_out, second_out) =
          apply_map(second, first_out, second_out,
                    first.block(i * first_out, j * first_out, first_out, first_out));
    }
  }
  return out;
}

ComplexMatrix tensor_choi(const ComplexMatrix& a, Index a_in, Index a_out, const ComplexMatrix& b,
                          Index b_in, Index b_out) {
  require_square(a, a_in * a_out, "tensor_choi (a)");
  require_square(b, b_in * b_out, "tensor_choi (b)");
  const Index in = a_in * b_in;
  const Index out_dim = a_out * b_out;
  ComplexMatrix out(in * out_dim, in * out_dim);
  for (Index i1 = 0; i1 < a_in; ++i1) {
    for (Index j1 = 0; j1 < a_in; ++j1) {
      const ComplexMatrix ablock = a.block(i1 * a_out, j1 * a_out, a_out, a_out);
      for (Index i2 = 0; i2 < b_in; ++i2) {
        for (Index j2 = 0; j2 < b_in; ++j2) {
          const Index row = i1 * b_in + i2;
          const Index col = j1 * b_in + j2;
          out.block(row * out_dim, col * out_dim, out_dim, out_dim) =
              tensor(ablock, b.block(i2 * b_out, j2 * b_out, b_out, b_out));
        }
      }
    }
  }
  return out;
}

ComplexMatrix dephase_output_choi(const ComplexMatrix& choi, Index dim_in, Index dim_out) {
  require_square(choi, dim_in * dim_out, "dephase_output_choi");
  ComplexMatrix out = choi;
  for (Index r = 0; r < out.rows(); ++r) {
    for (Index c = 0; c < out.cols(); ++c) {
      if (r % dim_out != c % dim_out) out(r, c) = 0.0;
    }
  }
  return out;
}

ComplexMatrix dephase_input_choi(const ComplexMatrix& choi, Index dim_in, Index dim_out) {
  require_square(choi, dim_in * dim_out, "dephase_input_choi");
  ComplexMatrix out = choi;
  for (Index r = 0; r < out.rows(); ++r) {
    for (Index c = 0; c < out.cols(); ++c) {
      if (r / dim_out != c / dim_out) out(r, c) = 0.0;
    }
  }
  return out;
}

Channel from_kraus(const KrausSet& k) {
  if (k.ops.empty()) throw InvariantViolation("kraus.nonempty", kInfinity);
  const Index dim_out = k.ops.front().rows();
  const Index dim_in = k.ops.front().cols();
  ComplexMatrix normalization = ComplexMatrix::Zero(dim_in, dim_in);
  ComplexMatrix choi = ComplexMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const ComplexMatrix& op : k.ops) {
    if (op.rows() != dim_out || op.cols() != dim_in) {
      throw DimensionMismatch("from_kraus: Kraus operators must share one shape");
    }
    normalization += op.adjoint() * op;
    ComplexVector v(dim_in * dim_out);
    for (Index i = 0; i < dim_in; ++i) {
      for (Index b = 0; b < dim_out; ++b) v(i * dim_out + b) = op(b, i);
    }
    choi += v * v.adjoint();
  }
  const double r = (normalization - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (r > 1e-8) throw InvariantViolation("kraus.normalization", r);
  return Channel::from_choi(std::move(choi), dim_in, dim_out);
}

KrausSet kraus_of(const Channel& n) {
  const auto dec = eigh(n.choi());
  KrausSet out;
  const double cutoff = 1e-13 * std::max(1.0, dec.values(0));
  for (Index k = 0; k < dec.values.size(); ++k) {
    if (dec.values(k) <= cutoff) break;
    ComplexMatrix op(n.dim_out(), n.dim_in());
    const double scale = std::sqrt(dec.values(k));
    for (Index i = 0; i < n.dim_in(); ++i) {
      for (Index b = 0; b < n.dim_out(); ++b) op(b, i) = scale * dec.vectors(i * n.dim_out() + b, k);
    }
    out.ops.push_back(std::move(op));
  }
  return out;
}

ComplexMatrix apply(const Channel& n, const ComplexMatrix& rho) {
  if (rho.rows() != n.dim_in()) throw DimensionMismatch("apply: state dimension mismatch");
  validate_state(rho);
  ComplexMatrix out = n(rho);
  out = (out + out.adjoint()).eval() / 2.0;
  return out;
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.dim_out() != second.dim_in()) throw DimensionMismatch("compose: dimension mismatch");
  return Channel::from_choi(
      compose_choi(second.choi(), second.dim_out(), first.choi(), first.dim_in(), first.dim_out()),
      first.dim_in(), second.dim_out());
}

Channel tensor_channels(const Channel& a, const Channel& b) {
  return Channel::from_choi(
      tensor_choi(a.choi(), a.dim_in(), a.dim_out(), b.choi(), b.dim_in(), b.dim_out()),
      a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out());
}

Channel mix(const Channel& a, const Channel& b, double lambda) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionMismatch("mix: dimension mismatch");
  }
  if (lambda < 0.0 || lambda > 1.0) throw InvariantViolation("mix.weight", std::abs(lambda));
  return Channel::from_choi(lambda * a.choi() + (1.0 - lambda) * b.choi(), a.dim_in(), a.dim_out());
}

Channel dephasing_channel(const DephasingSpec& spec) {
  spec.validate();
  KrausSet k;
  for (Index j = 0; j < spec.dim; ++j) {
    k.ops.push_back(spec.basis.col(j) * spec.basis.col(j).adjoint());
  }
  return from_kraus(k);
}

Channel dephasing_channel(Index dim) { return dephasing_channel(DephasingSpec::computational(dim)); }

Channel delta_post(const Channel& n) {
  return Channel::from_choi(dephase_output_choi(n.choi(), n.dim_in(), n.dim_out()), n.dim_in(),
                            n.dim_out());
}

Channel delta_pre(const Channel& n) {
  return Channel::from_choi(dephase_input_choi(n.choi(), n.dim_in(), n.dim_out()), n.dim_in(),
                            n.dim_out());
}

Channel delta_post(const Channel& n, const DephasingSpec& out) {
  return compose(dephasing_channel(out), n);
}

Channel delta_pre(const Channel& n, const DephasingSpec& in) {
  return compose(n, dephasing_channel(in));
}

Channel to_computational_frame(const Channel& n, const Bases& bases) {
  if (bases.in.dim != n.dim_in() || bases.out.dim != n.dim_out()) {
    throw DimensionMismatch("to_computational_frame: basis dimensions do not match channel");
  }
  bases.in.validate();
  bases.out.validate();
  if (bases.is_computational()) return n;
  return compose(unitary_channel(bases.out.basis.adjoint()),
                 compose(n, unitary_channel(bases.in.basis)));
}

Superchannel make_superchannel(Channel pre, Channel post, Index dim_env) {
  if (dim_env <= 0) throw DimensionMismatch("superchannel: environment dimension must be positive");
  if (pre.dim_out() % dim_env != 0 || post.dim_in() % dim_env != 0) {
    throw DimensionMismatch("superchannel: pre/post dimensions are not divisible by |E|");
  }
  return Superchannel{std::move(pre), std::move(post), dim_env};
}

Channel apply_superchannel(const Superchannel& s, const Channel& n) {
  if (s.pre.dim_out() != n.dim_in() * s.dim_env || s.post.dim_in() != n.dim_out() * s.dim_env) {
    throw DimensionMismatch("apply_superchannel: dimension chain is inconsistent");
  }
  const Channel middle = tensor_channels(n, identity_channel(s.dim_env));
  return compose(s.post, compose(middle, s.pre));
}

Channel identity_channel(Index dim) {
  return unitary_channel(ComplexMatrix::Identity(dim, dim));
}

Channel unitary_channel(const ComplexMatrix& v) { return from_kraus(KrausSet{{v}}); }

Channel hadamard_channel() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return unitary_channel(h / std::sqrt(2.0));
}

Channel depolarizing_channel(Index dim, double p) {
  if (p < 0.0 || p > 1.0) throw InvariantViolation("depolarizing.p", std::abs(p));
  const Channel id = identity_channel(dim);
  const Channel noise = replacer_channel(ComplexMatrix::Identity(dim, dim) / double(dim), dim);
  return mix(noise, id, p);
}

Channel replacer_channel(const ComplexMatrix& sigma, Index dim_in) {
  validate_state(sigma);
  return Channel::from_choi(tensor(ComplexMatrix::Identity(dim_in, dim_in), sigma), dim_in,
                            sigma.rows());
}

Channel random_channel(std::uint64_t seed, Index dim_in, Index dim_out) {
  Rng rng(seed);
  const Index dim_env = dim_in * dim_out;
  const ComplexMatrix v = random_isometry(rng, dim_out * dim_env, dim_in);
  KrausSet k;
  for (Index e = 0; e < dim_env; ++e) {
    ComplexMatrix op(dim_out, dim_in);
    for (Index b = 0; b < dim_out; ++b) op.row(b) = v.row(b * dim_env + e);
    k.ops.push_back(std::move(op));
  }
  return from_kraus(k);
}

Channel classical_channel(const RealMatrix& stochastic) {
  const Index dim_out = stochastic.rows();
  const Index dim_in = stochastic.cols();
  if ((stochastic.array() < -1e-12).any()) {
    throw InvariantViolation("stochastic.nonnegative", -stochastic.minCoeff());
  }
  ComplexMatrix choi = ComplexMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (Index i = 0; i < dim_in; ++i) {
    for (Index j = 0; j < dim_out; ++j) {
      choi(i * dim_out + j, i * dim_out + j) = std::max(0.0, stochastic(j, i));
    }
  }
  return Channel::from_choi(std::move(choi), dim_in, dim_out);
}

}  // namespace dyncoh
