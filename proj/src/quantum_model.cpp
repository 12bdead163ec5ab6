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

#include "urlab/quantum_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "urlab/rng.hpp"

namespace urlab {

namespace {

void check_dims(int a, int b, const char* what) {
  if (a != b)
    throw Error(ErrorCode::InvalidOperand,
                std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

double scale_of(const CMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

std::string format_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

QuantumState::QuantumState(const CMatrix& base, const TangentVector& displacement)
    : base_(base), theta_(displacement) {
  if (base.rows() != base.cols()) throw Error(ErrorCode::InvalidOperand, "state must be square");
  if (base.rows() < 2) throw Error(ErrorCode::InvalidDimension, "state dimension must be at least 2");
  check_dims(static_cast<int>(base.rows()), displacement.dim(), "state displacement");
  if (!is_hermitian(base, 1e-10)) throw Error(ErrorCode::InvalidOperand, "base state is not Hermitian");
  base_ = 0.5 * (base + base.adjoint());
  if (std::abs(base_.trace() - 1.0) > 1e-12 * static_cast<double>(base.rows()))
    throw Error(ErrorCode::InvalidOperand, "base state does not have unit trace");
  rho_ = base_ + theta_.entries();
  const double lmin = min_eigenvalue(rho_);
  if (lmin < kPositivityFloor)
    throw Error(ErrorCode::SingularState,
                "state eigenvalue " + std::to_string(lmin) + " is below the positivity floor");
}

QuantumState QuantumState::from_density(const CMatrix& rho) {
  return QuantumState(rho, TangentVector::zero(static_cast<int>(rho.rows())));
}

QuantumState QuantumState::maximally_mixed(int dim) {
  if (dim < 2) throw Error(ErrorCode::InvalidDimension, "state dimension must be at least 2");
  return from_density(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

QuantumState QuantumState::displaced(const TangentVector& step) const {
  return QuantumState(base_, TangentVector::from_coords(theta_.coords() + step.coords(), dim()));
}

// ---------------------------------------------------------------------------

Povm Povm::discrete(std::vector<std::string> labels, std::vector<CMatrix> effects) {
  Povm m;
  m.kind_ = Kind::Discrete;
  if (effects.empty()) throw Error(ErrorCode::InvalidOperand, "POVM has no effects");
  if (labels.empty()) {
    for (std::size_t i = 0; i < effects.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != effects.size()) throw Error(ErrorCode::InvalidOperand, "POVM label count mismatch");
  m.dim_ = static_cast<int>(effects.front().rows());
  m.labels_ = std::move(labels);
  m.effects_ = std::move(effects);
  m.validate(1e-8);
  return m;
}

Povm Povm::grid(std::vector<RVector> points, std::vector<double> weights, std::vector<CMatrix> densities) {
  Povm m;
  m.kind_ = Kind::Grid;
  if (densities.empty()) throw Error(ErrorCode::InvalidOperand, "POVM has no effects");
  if (points.size() != densities.size() || weights.size() != densities.size())
    throw Error(ErrorCode::InvalidOperand, "grid POVM: points, weights and densities must have equal length");
  m.dim_ = static_cast<int>(densities.front().rows());
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (!(weights[i] > 0.0)) throw Error(ErrorCode::InvalidOperand, "grid POVM weights must be positive");
    std::string label = "x=";
    for (Eigen::Index k = 0; k < points[i].size(); ++k) label += (k ? "," : "") + format_label(points[i](k));
    m.labels_.push_back(std::move(label));
    m.effects_.push_back(weights[i] * densities[i]);
  }
  m.points_ = std::move(points);
  m.weights_ = std::move(weights);
  m.validate(1e-6);
  return m;
}

void Povm::validate(double completeness_tol) const {
  if (dim_ < 1) throw Error(ErrorCode::InvalidOperand, "POVM effects are empty");
  CMatrix total = CMatrix::Zero(dim_, dim_);
  for (const auto& e : effects_) {
    if (e.rows() != dim_ || e.cols() != dim_) throw Error(ErrorCode::InvalidOperand, "POVM effect dimension mismatch");
    if (!is_hermitian(e, 1e-10) && e.cwiseAbs().maxCoeff() > 1e-14)
      throw Error(ErrorCode::InvalidOperand, "POVM effect is not Hermitian");
    if (min_eigenvalue(e) < -1e-10 * std::max(1.0, operator_norm(e)))
      throw Error(ErrorCode::InvalidOperand, "POVM effect is not positive semidefinite");
    total += e;
  }
  const double err = (total - CMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (err > completeness_tol)
    throw Error(ErrorCode::InvalidOperand, "POVM effects do not sum to the identity (error " + std::to_string(err) + ")");
}

bool Povm::is_projective(double tol) const {
  return std::all_of(effects_.begin(), effects_.end(), [tol](const CMatrix& e) {
    return (e * e - e).cwiseAbs().maxCoeff() <= tol * scale_of(e);
  });
}

// ---------------------------------------------------------------------------

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidOperand, "channel has no Kraus operators");
  out_dim_ = static_cast<int>(kraus_.front().rows());
  in_dim_ = static_cast<int>(kraus_.front().cols());
  CMatrix total = CMatrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw Error(ErrorCode::InvalidOperand, "Kraus operators have inconsistent shapes");
    total += k.adjoint() * k;
  }
  if ((total - CMatrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidOperand, "Kraus operators are not trace preserving");
}

KrausChannel KrausChannel::identity(int dim) { return KrausChannel({CMatrix::Identity(dim, dim)}); }

KrausChannel KrausChannel::unitary(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel KrausChannel::depolarizing(double p) {
  if (p < 0.0 || p > 4.0 / 3.0) throw Error(ErrorCode::InvalidOperand, "depolarizing parameter outside [0, 4/3]");
  const Complex i1(0.0, 1.0);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i1, i1, 0;
  sz << 1, 0, 0, -1;
  const double w = std::sqrt(p) / 2.0;
  return KrausChannel({std::sqrt(1.0 - 0.75 * p) * CMatrix::Identity(2, 2), w * sx, w * sy, w * sz});
}

KrausChannel KrausChannel::full_dephasing(int dim) {
  std::vector<CMatrix> ks;
  for (int i = 0; i < dim; ++i) {
    CMatrix p = CMatrix::Zero(dim, dim);
    p(i, i) = 1.0;
    ks.push_back(std::move(p));
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::schur_dephasing(const RMatrix& correlation) {
  const auto d = correlation.rows();
  if (correlation.cols() != d || d < 1) throw Error(ErrorCode::InvalidOperand, "correlation matrix must be square");
  if ((correlation - correlation.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      (correlation.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidOperand, "correlation matrix must be symmetric with unit diagonal");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(correlation);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-10 * top)
    throw Error(ErrorCode::InvalidOperand, "correlation matrix is not positive semidefinite");
  std::vector<CMatrix> ks;
  for (Eigen::Index l = d - 1; l >= 0; --l) {
    const double mu = es.eigenvalues()(l);
    if (mu <= 1e-15 * top) continue;
    ks.emplace_back((std::sqrt(mu) * es.eigenvectors().col(l)).cast<Complex>().asDiagonal());
  }
  return KrausChannel(std::move(ks));
}

CMatrix KrausChannel::apply_adjoint(const CMatrix& y) const {
  check_dims(static_cast<int>(y.rows()), out_dim_, "channel adjoint");
  CMatrix out = CMatrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) out += k.adjoint() * y * k;
  return out;
}

CpInstrument::CpInstrument(std::vector<std::string> labels, std::vector<std::vector<CMatrix>> kraus_sets)
    : labels_(std::move(labels)), kraus_sets_(std::move(kraus_sets)) {
  if (kraus_sets_.empty()) throw Error(ErrorCode::InvalidOperand, "instrument has no outcomes");
  if (labels_.empty())
    for (std::size_t i = 0; i < kraus_sets_.size(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != kraus_sets_.size()) throw Error(ErrorCode::InvalidOperand, "instrument label count mismatch");
  std::vector<CMatrix> all;
  for (const auto& set : kraus_sets_) {
    if (set.empty()) throw Error(ErrorCode::InvalidOperand, "instrument outcome has no Kraus operators");
    all.insert(all.end(), set.begin(), set.end());
  }
  KrausChannel total(std::move(all));
  in_dim_ = total.in_dim();
  out_dim_ = total.out_dim();
}

CpInstrument CpInstrument::lueders(const Povm& povm) {
  std::vector<std::vector<CMatrix>> sets;
  for (const auto& e : povm.effects()) sets.push_back({psd_sqrt(e)});
  return CpInstrument(povm.outcomes(), std::move(sets));
}

// ---------------------------------------------------------------------------

double expectation(const QuantumState& s, const Observable& a) {
  check_dims(s.dim(), a.dim(), "expectation");
  const Complex v = (s.density() * a.matrix()).trace();
  if (std::abs(v.imag()) > 1e-10 * scale_of(a.matrix()))
    throw Error(ErrorCode::InvalidOperand, "expectation has a non-negligible imaginary part");
  return v.real();
}

Complex correlation(const QuantumState& s, const Observable& a, const Observable& b) {
  check_dims(s.dim(), a.dim(), "correlation");
  check_dims(s.dim(), b.dim(), "correlation");
  const Complex ab = (s.density() * a.matrix().adjoint() * b.matrix()).trace();
  return ab - expectation(s, a) * expectation(s, b);
}

double variance(const QuantumState& s, const Observable& a) { return correlation(s, a, a).real(); }

double sym_correlation(const QuantumState& s, const Observable& a, const Observable& b) {
  return 0.5 * (correlation(s, a, b) + correlation(s, b, a)).real();
}

TangentVector grad_expectation(const QuantumState& s, const Observable& a) {
  check_dims(s.dim(), a.dim(), "gradient");
  return project_traceless(a.hermitian());
}

CMatrix apply_channel(const KrausChannel& ch, const CMatrix& x) {
  if (x.rows() != ch.in_dim() || x.cols() != ch.in_dim())
    throw Error(ErrorCode::InvalidOperand, "channel input dimension mismatch");
  CMatrix out = CMatrix::Zero(ch.out_dim(), ch.out_dim());
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

QuantumState apply_channel(const KrausChannel& ch, const QuantumState& s) {
  return QuantumState::from_density(apply_channel(ch, s.density()));
}

TangentVector apply_channel(const KrausChannel& ch, const TangentVector& v) {
  CMatrix out = apply_channel(ch, v.entries());
  return TangentVector::from_coords(tangent_coords(out), ch.out_dim());
}

Povm induced_povm(const CpInstrument& ins) {
  std::vector<CMatrix> effects;
  for (const auto& set : ins.kraus_sets()) {
    CMatrix e = CMatrix::Zero(ins.in_dim(), ins.in_dim());
    for (const auto& k : set) e += k.adjoint() * k;
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm::discrete(ins.outcomes(), std::move(effects));
}

KrausChannel average_channel(const CpInstrument& ins) {
  std::vector<CMatrix> all;
  for (const auto& set : ins.kraus_sets()) all.insert(all.end(), set.begin(), set.end());
  return KrausChannel(std::move(all));
}

SpectralMeasure spectral_measure(const CMatrix& hermitian, std::optional<double> degeneracy_tol) {
  HermitianMatrix h(hermitian);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  const RVector& lam = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();
  const double tol = degeneracy_tol ? *degeneracy_tol : 1e-8 * lam.cwiseAbs().maxCoeff();
  const auto d = lam.size();

  std::vector<double> eig;
  std::vector<std::string> labels;
  std::vector<CMatrix> effects;
  std::set<std::string> seen;
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && lam(end) - lam(end - 1) <= tol) ++end;
    const auto block = vecs.middleCols(start, end - start);
    effects.emplace_back(block * block.adjoint());
    const double mean = lam.segment(start, end - start).mean();
    eig.push_back(mean);
    std::string label = format_label(mean);
    if (!seen.insert(label).second) label += "#" + std::to_string(effects.size() - 1);
    labels.push_back(std::move(label));
    start = end;
  }
  return SpectralMeasure{Povm::discrete(std::move(labels), std::move(effects)), std::move(eig)};
}

Povm pvm_of_observable(const Observable& a, std::optional<double> degeneracy_tol) {
  return spectral_measure(a.matrix(), degeneracy_tol).pvm;
}

RVector outcome_probabilities(const QuantumState& s, const Povm& m) {
  check_dims(s.dim(), m.dim(), "outcome probabilities");
  RVector p(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = std::max(0.0, (s.density() * m.effect(i)).trace().real());
  return p;
}

std::vector<std::size_t> sample_indices(const RVector& probs, std::size_t n, std::uint64_t seed) {
  if (probs.size() == 0) throw Error(ErrorCode::InvalidOperand, "cannot sample from an empty distribution");
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += std::max(0.0, probs(i));
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  if (!(acc > 0.0)) throw Error(ErrorCode::InvalidOperand, "distribution has zero total mass");
  const CounterRng rng(seed);
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform_at(k) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out[k] = static_cast<std::size_t>(it - cdf.begin());
  }
  return out;
}

std::vector<std::size_t> sample_outcomes(const QuantumState& s, const Povm& m, std::size_t n, std::uint64_t seed) {
  return sample_indices(outcome_probabilities(s, m), n, seed);
}

}  // namespace urlab
