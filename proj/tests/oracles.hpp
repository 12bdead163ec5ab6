// Copyright 2026 The urlab Authors
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

#pragma once

// Independent reference computations used only by the tests. None of these
// go through the library's eigenbasis formulas.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "urlab/operator_core.hpp"

namespace oracle {

using urlab::CMatrix;
using urlab::Complex;
using urlab::CVector;
using urlab::RMatrix;
using urlab::RVector;

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline CMatrix id(int d) { return CMatrix::Identity(d, d); }

/// Explicit generalized Gell-Mann matrices in the library's ordering.
inline std::vector<CMatrix> gell_mann(int d) {
  std::vector<CMatrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = r;
      m(k, j) = r;
      out.push_back(m);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = Complex(0, -r);
      m(k, j) = Complex(0, r);
      out.push_back(m);
    }
  for (int l = 1; l < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double n = 1.0 / std::sqrt(l * (l + 1.0));
    for (int i = 0; i < l; ++i) m(i, i) = n;
    m(l, l) = -l * n;
    out.push_back(m);
  }
  return out;
}

/// Solves (rho L + L rho)/2 = phi through the Kronecker-product linear system.
inline CMatrix sld_kron(const CMatrix& rho, const CMatrix& phi) {
  const auto d = rho.rows();
  const CMatrix i = CMatrix::Identity(d, d);
  CMatrix k(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index e = 0; e < d; ++e)
          // vec column-major: index (row + d * col)
          k(a + d * b, c + d * e) = 0.5 * (rho(a, c) * i(e, b) + i(a, c) * rho(e, b));
  const CVector rhs = Eigen::Map<const CVector>(phi.data(), d * d);
  const CVector sol = k.fullPivLu().solve(rhs);
  return Eigen::Map<const CMatrix>(sol.data(), d, d);
}

/// Brute-force J^f_ab = Tr[e_a L(e_b)] with L from a caller-provided solver.
template <typename Solver>
CMatrix fisher_brute(const CMatrix& rho, Solver solve) {
  const auto basis = gell_mann(static_cast<int>(rho.rows()));
  const auto m = static_cast<Eigen::Index>(basis.size());
  CMatrix j(m, m);
  for (Eigen::Index b = 0; b < m; ++b) {
    const CMatrix l = solve(rho, basis[static_cast<std::size_t>(b)]);
    for (Eigen::Index a = 0; a < m; ++a) j(a, b) = (basis[static_cast<std::size_t>(a)] * l).trace();
  }
  return j;
}

/// Classical Fisher by central differences of p_x(theta) = Tr[(rho + t e_a) E_x].
inline RMatrix classical_fisher_fd(const CMatrix& rho, const std::vector<CMatrix>& effects, double h = 1e-6) {
  const auto basis = gell_mann(static_cast<int>(rho.rows()));
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix j = RMatrix::Zero(m, m);
  for (const CMatrix& e : effects) {
    const double p = (rho * e).trace().real();
    if (p <= 1e-14) continue;
    RVector dp(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const CMatrix& ea = basis[static_cast<std::size_t>(a)];
      dp(a) = (((rho + h * ea) * e).trace().real() - ((rho - h * ea) * e).trace().real()) / (2 * h);
    }
    j += dp * dp.transpose() / p;
  }
  return j;
}

/// Largest residual of the four Penrose conditions, relative to ||A||.
template <typename M>
double penrose_residual(const M& a, const M& x) {
  const double na = std::max(a.norm(), 1e-300);
  const double r1 = (a * x * a - a).norm() / na;
  const double r2 = (x * a * x - x).norm() / std::max(x.norm(), 1e-300);
  const double r3 = ((a * x).adjoint() - a * x).norm();
  const double r4 = ((x * a).adjoint() - x * a).norm();
  return std::max({r1, r2, r3, r4});
}

}  // namespace oracle
