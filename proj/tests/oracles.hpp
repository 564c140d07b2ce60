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


// Reference computations for the tests. They use plain loops and Eigen
// decompositions only, never the library routines they are compared with.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Tr_B or Tr_A of an operator on A⊗B, one entry at a time.
inline Mat naive_partial_trace(const Mat& m, int da, int db, bool keep_first) {
  if (keep_first) {
    Mat out = Mat::Zero(da, da);
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b = 0; b < db; ++b) out(a, a2) += m(a * db + b, a2 * db + b);
    return out;
  }
  Mat out = Mat::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a) out(b, b2) += m(a * db + b, a * db + b2);
  return out;
}

/// Choi matrix (input first) of ρ ↦ Σ K ρ K†:
///   J[(a,b),(a',b')] = Σ_k K[b,a] conj(K[b',a']).
inline Mat kraus_choi(const std::vector<Mat>& ops) {
  const int dout = static_cast<int>(ops.front().rows());
  const int din = static_cast<int>(ops.front().cols());
  Mat j = Mat::Zero(din * dout, din * dout);
  for (const auto& k : ops)
    for (int a = 0; a < din; ++a)
      for (int b = 0; b < dout; ++b)
        for (int a2 = 0; a2 < din; ++a2)
          for (int b2 = 0; b2 < dout; ++b2) j(a * dout + b, a2 * dout + b2) += k(b, a) * std::conj(k(b2, a2));
  return j;
}

/// Φ(ρ)[b,b'] = Σ ρ[a,a'] J[(a,b),(a',b')].
inline Mat apply_choi(const Mat& j, const Mat& rho, int din, int dout) {
  Mat out = Mat::Zero(dout, dout);
  for (int a = 0; a < din; ++a)
    for (int a2 = 0; a2 < din; ++a2)
      for (int b = 0; b < dout; ++b)
        for (int b2 = 0; b2 < dout; ++b2) out(b, b2) += rho(a, a2) * j(a * dout + b, a2 * dout + b2);
  return out;
}

inline double hermitian_trace_norm(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Points of a Fibonacci lattice on the unit sphere.
inline std::vector<std::array<double, 3>> fibonacci_sphere(int n) {
  std::vector<std::array<double, 3>> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(1.0 - z * z);
    pts.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
  }
  return pts;
}

inline Mat qubit_state(double x, double y, double z) {
  Mat rho(2, 2);
  rho << cplx(1 + z, 0), cplx(x, -y), cplx(x, y), cplx(1 - z, 0);
  return rho / 2.0;
}

/// max over Bloch-sphere pure states of ‖(Φ − Ψ)(ψ)‖_1 for qubit channels,
/// evaluated on an n-point Fibonacci grid.
inline double bloch_grid_trace_distance(const Mat& jn, const Mat& jm, int n = 10000) {
  const Mat diff = jn - jm;
  double best = 0.0;
  for (const auto& p : fibonacci_sphere(n)) {
    best = std::max(best, hermitian_trace_norm(apply_choi(diff, qubit_state(p[0], p[1], p[2]), 2, 2)));
  }
  return best;
}

/// Nelder–Mead on an unconstrained objective; returns the best value found.
inline double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, int max_evals, std::vector<double>* argmin = nullptr) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> s(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(s[i]);
  int evals = static_cast<int>(n + 1);
  std::vector<std::size_t> idx(n + 1);
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    const std::size_t lo = idx[0], hi = idx[n], second = idx[n - 1];
    if (std::abs(v[hi] - v[lo]) < 1e-12) break;
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != hi)
        for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / n;
    const auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = c[k] + t * (s[hi][k] - c[k]);
      return p;
    };
    auto xr = along(-1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < v[lo]) {
      auto xe = along(-2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        s[hi] = xe, v[hi] = fe;
      } else {
        s[hi] = xr, v[hi] = fr;
      }
    } else if (fr < v[second]) {
      s[hi] = xr, v[hi] = fr;
    } else {
      auto xc = along(0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < v[hi]) {
        s[hi] = xc, v[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (std::size_t k = 0; k < n; ++k) s[i][k] = s[lo][k] + 0.5 * (s[i][k] - s[lo][k]);
          v[i] = f(s[i]);
          ++evals;
        }
      }
    }
  }
  const auto best = std::min_element(v.begin(), v.end()) - v.begin();
  if (argmin) *argmin = s[best];
  return v[best];
}

/// ‖Φ‖_⋄ of a qubit Hermiticity-preserving map as max over input states σ of
/// ‖(√σ ⊗ I) J (√σ ⊗ I)‖_1. Grid over the Bloch ball, then simplex polish.
inline double qubit_diamond_norm(const Mat& j, int directions = 200) {
  const auto value = [&](double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1.0) x /= r, y /= r, z /= r;
    Eigen::SelfAdjointEigenSolver<Mat> es(qubit_state(x, y, z));
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Mat root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    Mat lift = Mat::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b = 0; b < 2; ++b) lift(a * 2 + b, a2 * 2 + b) = root(a, a2);
    return hermitian_trace_norm(lift * j * lift);
  };
  double best = value(0, 0, 0);
  std::array<double, 3> arg{0, 0, 0};
  for (const auto& p : fibonacci_sphere(directions)) {
    for (double r : {0.25, 0.5, 0.75, 1.0}) {
      const double v = value(r * p[0], r * p[1], r * p[2]);
      if (v > best) best = v, arg = {r * p[0], r * p[1], r * p[2]};
    }
  }
  const double polished = -nelder_mead(
      [&](const std::vector<double>& q) { return -value(q[0], q[1], q[2]); },
      {arg[0], arg[1], arg[2]}, 0.05, 300);
  return std::max(best, polished);
}

/// Every DCI qubit channel has a Choi matrix of the form
///   [[p,0,0,x],[0,1−p,y,0],[0,ȳ,q,0],[x̄,0,0,1−q]]
/// with |x|² ≤ p(1−q) and |y|² ≤ (1−p)q. Parameters are (p, q, r1, θ1, r2, θ2)
/// with x = r1 √(p(1−q)) e^{iθ1}, y = r2 √((1−p)q) e^{iθ2}; values are clamped.
inline Mat dci_qubit_choi(const std::vector<double>& t) {
  const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  const double p = clamp01(t[0]), q = clamp01(t[1]);
  const cplx x = clamp01(t[2]) * std::sqrt(p * (1 - q)) * std::polar(1.0, t[3]);
  const cplx y = clamp01(t[4]) * std::sqrt((1 - p) * q) * std::polar(1.0, t[5]);
  Mat j = Mat::Zero(4, 4);
  j(0, 0) = p, j(1, 1) = 1 - p, j(2, 2) = q, j(3, 3) = 1 - q;
  j(0, 3) = x, j(3, 0) = std::conj(x);
  j(1, 2) = y, j(2, 1) = std::conj(y);
  return j;
}

/// min over DCI qubit channels K of ‖J_N − J_K‖_⋄ by a parameter grid
/// followed by simplex descent from the best grid points.
inline double dci_diamond_measure(const Mat& jn) {
  struct Start {
    double v;
    std::vector<double> t;
  };
  std::vector<Start> starts;
  const double pi = std::numbers::pi;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (double r1 : {0.0, 0.5, 1.0})
        for (double th1 : {0.0, pi / 2, pi, 3 * pi / 2})
          for (double r2 : {0.0, 0.5, 1.0})
            for (double th2 : {0.0, pi / 2, pi, 3 * pi / 2}) {
              std::vector<double> t{p, q, r1, th1, r2, th2};
              starts.push_back({qubit_diamond_norm(jn - dci_qubit_choi(t), 24), t});
            }
  std::sort(starts.begin(), starts.end(), [](const Start& a, const Start& b) { return a.v < b.v; });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto score = [&](const std::vector<double>& t) {
      return qubit_diamond_norm(jn - dci_qubit_choi(t), 60);
    };
    std::vector<double> t = starts[i].t;
    nelder_mead(score, t, 0.1, 600, &t);
    best = std::min(best, qubit_diamond_norm(jn - dci_qubit_choi(t), 400));
  }
  return best;
}

}  // namespace oracle
