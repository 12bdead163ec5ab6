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

#include "urlab/random.hpp"

#include <string>

namespace urlab {

namespace {

CMatrix inverse_sqrt_psd(const CMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  const RVector w = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix isometry(int rows, int cols, CounterRng& rng) {
  const CMatrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  // Fix column phases so the distribution does not depend on QR conventions.
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace

CMatrix random_ginibre(int rows, int cols, CounterRng& rng) {
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal() * std::sqrt(0.5);
  return g;
}

CMatrix random_hermitian(int d, CounterRng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_unitary(int d, CounterRng& rng) { return isometry(d, d, rng); }

CMatrix random_density(int d, CounterRng& rng, double mix) {
  const CMatrix g = random_ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - mix) * rho + (mix / d) * CMatrix::Identity(d, d);
  return 0.5 * (rho + rho.adjoint());
}

Povm random_povm(int d, int outcomes, CounterRng& rng) {
  std::vector<CMatrix> a;
  CMatrix s = CMatrix::Zero(d, d);
  for (int k = 0; k < outcomes; ++k) {
    const CMatrix g = random_ginibre(d, d, rng);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const CMatrix t = inverse_sqrt_psd(s);
  std::vector<std::string> labels;
  std::vector<CMatrix> effects;
  for (int k = 0; k < outcomes; ++k) {
    CMatrix e = t * a[static_cast<std::size_t>(k)] * t;
    effects.push_back(0.5 * (e + e.adjoint()));
    labels.push_back(std::to_string(k));
  }
  return Povm::discrete(std::move(labels), std::move(effects));
}

KrausChannel random_channel(int in_dim, int out_dim, int n_kraus, CounterRng& rng) {
  if (out_dim * n_kraus < in_dim)
    throw Error(ErrorCode::InvalidDimension, "random channel needs out_dim * n_kraus >= in_dim");
  const CMatrix v = isometry(out_dim * n_kraus, in_dim, rng);
  std::vector<CMatrix> kraus;
  for (int k = 0; k < n_kraus; ++k) kraus.emplace_back(v.middleRows(k * out_dim, out_dim));
  return KrausChannel(std::move(kraus));
}

CpInstrument random_instrument(int d, int outcomes, int kraus_per_outcome, CounterRng& rng) {
  const int n = outcomes * kraus_per_outcome;
  if (d * n < d) throw Error(ErrorCode::InvalidDimension, "random instrument needs at least one operator");
  const CMatrix v = isometry(d * n, d, rng);
  std::vector<std::string> labels;
  std::vector<std::vector<CMatrix>> sets(static_cast<std::size_t>(outcomes));
  for (int x = 0; x < outcomes; ++x) {
    labels.push_back(std::to_string(x));
    for (int k = 0; k < kraus_per_outcome; ++k)
      sets[static_cast<std::size_t>(x)].emplace_back(v.middleRows((x * kraus_per_outcome + k) * d, d));
  }
  return CpInstrument(std::move(labels), std::move(sets));
}

StochasticKernel random_stochastic_kernel(int n_out, int n_in, CounterRng& rng) {
  RMatrix k(n_out, n_in);
  for (int j = 0; j < n_in; ++j) {
    for (int i = 0; i < n_out; ++i) k(i, j) = -std::log(1.0 - rng.uniform());
    k.col(j) /= k.col(j).sum();
  }
  return StochasticKernel(std::move(k));
}

}  // namespace urlab
