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

#include "dyncoh/sdp_model.hpp"

#include "dyncoh/errors.hpp"

namespace dyncoh::sdp {

AffineScalar& AffineScalar::operator+=(const AffineScalar& o) {
  add_scaled(o, 1.0);
  return *this;
}

AffineScalar& AffineScalar::operator-=(const AffineScalar& o) {
  add_scaled(o, -1.0);
  return *this;
}

AffineScalar& AffineScalar::operator*=(double s) {
  for (auto& [idx, c] : terms) c *= s;
  constant *= s;
  return *this;
}

void AffineScalar::add_scaled(const AffineScalar& o, double s) {
  if (s == 0.0) return;
  for (const auto& [idx, c] : o.terms) terms[idx] += s * c;
  constant += s * o.constant;
}

AffineScalar operator+(AffineScalar a, const AffineScalar& b) { return a += b; }
AffineScalar operator-(AffineScalar a, const AffineScalar& b) { return a -= b; }
AffineScalar operator*(double s, AffineScalar a) { return a *= s; }

void ComplexAffine::add_scaled(const ComplexAffine& o, cplx z) {
  re.add_scaled(o.re, z.real());
  re.add_scaled(o.im, -z.imag());
  im.add_scaled(o.im, z.real());
  im.add_scaled(o.re, z.imag());
}

AffineMatrix::AffineMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

AffineMatrix AffineMatrix::constant(const ComplexMatrix& m) {
  AffineMatrix out(m.rows(), m.cols());
  out += m;
  return out;
}

namespace {
void require_same_shape(const AffineMatrix& a, Index rows, Index cols) {
  if (a.rows() != rows || a.cols() != cols) throw DimensionMismatch("affine matrix shapes differ");
}
}  // namespace

AffineMatrix& AffineMatrix::operator+=(const AffineMatrix& o) {
  require_same_shape(*this, o.rows(), o.cols());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i].add_scaled(o.data_[i], 1.0);
  return *this;
}

AffineMatrix& AffineMatrix::operator-=(const AffineMatrix& o) {
  require_same_shape(*this, o.rows(), o.cols());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i].add_scaled(o.data_[i], -1.0);
  return *this;
}

AffineMatrix& AffineMatrix::operator+=(const ComplexMatrix& m) {
  require_same_shape(*this, m.rows(), m.cols());
  for (Index r = 0; r < rows_; ++r) {
    for (Index c = 0; c < cols_; ++c) {
      (*this)(r, c).re.constant += m(r, c).real();
      (*this)(r, c).im.constant += m(r, c).imag();
    }
  }
  return *this;
}

AffineMatrix& AffineMatrix::operator-=(const ComplexMatrix& m) { return *this += ComplexMatrix(-m); }

AffineMatrix& AffineMatrix::operator*=(cplx s) {
  for (auto& e : data_) {
    ComplexAffine scaled;
    scaled.add_scaled(e, s);
    e = std::move(scaled);
  }
  return *this;
}

AffineMatrix AffineMatrix::block(Index r, Index c, Index h, Index w) const {
  AffineMatrix out(h, w);
  for (Index i = 0; i < h; ++i) {
    for (Index j = 0; j < w; ++j) out(i, j) = (*this)(r + i, c + j);
  }
  return out;
}

AffineMatrix AffineMatrix::masked(const RealMatrix& mask) const {
  require_same_shape(*this, mask.rows(), mask.cols());
  AffineMatrix out(rows_, cols_);
  for (Index r = 0; r < rows_; ++r) {
    for (Index c = 0; c < cols_; ++c) {
      if (mask(r, c) != 0.0) out(r, c).add_scaled((*this)(r, c), mask(r, c));
    }
  }
  return out;
}

AffineScalar AffineMatrix::real_trace() const {
  AffineScalar out;
  for (Index i = 0; i < std::min(rows_, cols_); ++i) out += (*this)(i, i).re;
  return out;
}

AffineScalar AffineMatrix::re_inner(const ComplexMatrix& c) const {
  require_same_shape(*this, c.rows(), c.cols());
  // Re(conj(c) · x) = Re c · Re x + Im c · Im x
  AffineScalar out;
  for (Index r = 0; r < rows_; ++r) {
    for (Index k = 0; k < cols_; ++k) {
      out.add_scaled((*this)(r, k).re, c(r, k).real());
      out.add_scaled((*this)(r, k).im, c(r, k).imag());
    }
  }
  return out;
}

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b) { return a += b; }
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b) { return a -= b; }
AffineMatrix operator*(cplx s, AffineMatrix a) { return a *= s; }

AffineMatrix kron(const ComplexMatrix& c, const AffineMatrix& x) {
  AffineMatrix out(c.rows() * x.rows(), c.cols() * x.cols());
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) {
      if (c(i, j) == cplx(0.0)) continue;
      for (Index r = 0; r < x.rows(); ++r) {
        for (Index k = 0; k < x.cols(); ++k) {
          out(i * x.rows() + r, j * x.cols() + k).add_scaled(x(r, k), c(i, j));
        }
      }
    }
  }
  return out;
}

AffineMatrix kron(const AffineMatrix& x, const ComplexMatrix& c) {
  AffineMatrix out(x.rows() * c.rows(), x.cols() * c.cols());
  for (Index r = 0; r < x.rows(); ++r) {
    for (Index k = 0; k < x.cols(); ++k) {
      for (Index i = 0; i < c.rows(); ++i) {
        for (Index j = 0; j < c.cols(); ++j) {
          if (c(i, j) == cplx(0.0)) continue;
          out(r * c.rows() + i, k * c.cols() + j).add_scaled(x(r, k), c(i, j));
        }
      }
    }
  }
  return out;
}

AffineMatrix trace_out_second(const AffineMatrix& x, Index d1, Index d2) {
  if (x.rows() != d1 * d2 || x.cols() != d1 * d2) throw DimensionMismatch("trace_out_second");
  AffineMatrix out(d1, d1);
  for (Index a = 0; a < d1; ++a) {
    for (Index c = 0; c < d1; ++c) {
      for (Index b = 0; b < d2; ++b) out(a, c).add_scaled(x(a * d2 + b, c * d2 + b), 1.0);
    }
  }
  return out;
}

AffineMatrix trace_out_first(const AffineMatrix& x, Index d1, Index d2) {
  if (x.rows() != d1 * d2 || x.cols() != d1 * d2) throw DimensionMismatch("trace_out_first");
  AffineMatrix out(d2, d2);
  for (Index b = 0; b < d2; ++b) {
    for (Index c = 0; c < d2; ++c) {
      for (Index a = 0; a < d1; ++a) out(b, c).add_scaled(x(a * d2 + b, a * d2 + c), 1.0);
    }
  }
  return out;
}

AffineMatrix choi_apply(const AffineMatrix& choi, const ComplexMatrix& rho, Index dim_out) {
  const Index dim_in = rho.rows();
  if (choi.rows() != dim_in * dim_out) throw DimensionMismatch("choi_apply");
  AffineMatrix out(dim_out, dim_out);
  for (Index i = 0; i < dim_in; ++i) {
    for (Index j = 0; j < dim_in; ++j) {
      const cplx z = rho(i, j);
      if (z == cplx(0.0)) continue;
      for (Index b = 0; b < dim_out; ++b) {
        for (Index c = 0; c < dim_out; ++c) {
          out(b, c).add_scaled(choi(i * dim_out + b, j * dim_out + c), z);
        }
      }
    }
  }
  return out;
}

AffineMatrix Model::add_psd(Index n) {
  const Index base = next_;
  program_.blocks.push_back({n, BlockKind::Hermitian});
  next_ += n * n;
  AffineMatrix out(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index lo = std::min(a, b);
      const Index hi = std::max(a, b);
      out(a, b).re.terms[base + upper_index(n, lo, hi)] = 1.0;
      if (a != b) {
        out(a, b).im.terms[base + n * (n + 1) / 2 + strict_upper_index(n, lo, hi)] =
            a < b ? 1.0 : -1.0;
      }
    }
  }
  return out;
}

std::vector<AffineScalar> Model::add_nonnegative(Index k) {
  const Index base = next_;
  program_.blocks.push_back({k, BlockKind::Nonnegative});
  next_ += k;
  std::vector<AffineScalar> out(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) out[static_cast<std::size_t>(i)].terms[base + i] = 1.0;
  return out;
}

void Model::equal(const AffineScalar& expr, double rhs) {
  LinearFunctional f;
  for (const auto& [idx, c] : expr.terms) {
    if (c != 0.0) f.terms.emplace_back(idx, c);
  }
  program_.equalities.push_back(std::move(f));
  program_.rhs.push_back(rhs - expr.constant);
}

void Model::equal_hermitian(const AffineMatrix& expr) {
  if (expr.rows() != expr.cols()) throw DimensionMismatch("equal_hermitian needs a square expression");
  for (Index a = 0; a < expr.rows(); ++a) {
    equal(expr(a, a).re);
    for (Index b = a + 1; b < expr.cols(); ++b) {
      equal(expr(a, b).re);
      equal(expr(a, b).im);
    }
  }
}

void Model::equal_all(const AffineMatrix& expr) {
  for (Index a = 0; a < expr.rows(); ++a) {
    for (Index b = 0; b < expr.cols(); ++b) {
      equal(expr(a, b).re);
      equal(expr(a, b).im);
    }
  }
}

void Model::minimize(const AffineScalar& objective) {
  program_.objective.terms.clear();
  for (const auto& [idx, c] : objective.terms) {
    if (c != 0.0) program_.objective.terms.emplace_back(idx, c);
  }
  program_.objective_offset = objective.constant;
}

Solution Model::solve(const SolveOptions& options) const { return sdp::solve(program_, options); }

double Model::value(const AffineScalar& e, const Solution& sol) {
  double v = e.constant;
  for (const auto& [idx, c] : e.terms) v += c * sol.x(idx);
  return v;
}

ComplexMatrix Model::value(const AffineMatrix& e, const Solution& sol) {
  ComplexMatrix out(e.rows(), e.cols());
  for (Index r = 0; r < e.rows(); ++r) {
    for (Index c = 0; c < e.cols(); ++c) out(r, c) = cplx(value(e(r, c).re, sol), value(e(r, c).im, sol));
  }
  return out;
}

}  // namespace dyncoh::sdp
