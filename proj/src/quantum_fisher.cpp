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

#include "urlab/quantum_fisher.hpp"

#include <cmath>

namespace urlab {

namespace {

// Factor F with J = F^dagger F: column a holds the eigenbasis entries of the
// (pushed) basis element divided by sqrt(c_ij).
CMatrix fisher_factor(const SuperOperatorKf& k, const std::vector<CMatrix>& directions) {
  const int d = k.dim();
  const RMatrix scale = k.coefficients().cwiseSqrt().cwiseInverse();
  CMatrix f(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(directions.size()));
  for (std::size_t a = 0; a < directions.size(); ++a) {
    const CMatrix x = k.to_eigenbasis(directions[a]).cwiseProduct(scale.cast<Complex>());
    f.col(static_cast<Eigen::Index>(a)) = Eigen::Map<const CVector>(x.data(), x.size());
  }
  return f;
}

}  // namespace

LogDerivative log_derivative(const QuantumState& s, const TangentVector& phi, const MonotoneFunction& f) {
  if (phi.dim() != s.dim()) throw Error(ErrorCode::InvalidOperand, "direction and state dimensions differ");
  const SuperOperatorKf k(s.density(), f);
  CMatrix l = k.apply_inverse(phi.entries());
  if (f.symmetric()) l = 0.5 * (l + l.adjoint()).eval();
  return LogDerivative{phi, f.name(), std::move(l)};
}

QuantumFisherOperator::QuantumFisherOperator(std::string kind, PsdOperator<double> op)
    : kind_(std::move(kind)), real_(std::move(op)) {}

QuantumFisherOperator::QuantumFisherOperator(std::string kind, PsdOperator<Complex> op)
    : kind_(std::move(kind)), complex_(std::move(op)) {}

int QuantumFisherOperator::dim() const { return real_ ? real_->dim() : complex_->dim(); }
double QuantumFisherOperator::norm() const { return real_ ? real_->norm() : complex_->norm(); }
double QuantumFisherOperator::min_eigenvalue() const {
  return real_ ? real_->min_eigenvalue() : complex_->min_eigenvalue();
}

const PsdOperator<double>& QuantumFisherOperator::real_operator() const {
  if (!real_) throw Error(ErrorCode::InvalidOperand, "Fisher operator '" + kind_ + "' is not real");
  return *real_;
}

PsdOperator<Complex> QuantumFisherOperator::complex_operator() const {
  if (complex_) return *complex_;
  return PsdOperator<Complex>::from_matrix(real_->matrix().cast<Complex>(), real_->tolerance());
}

CMatrix QuantumFisherOperator::complex_matrix() const {
  return real_ ? CMatrix(real_->matrix().cast<Complex>()) : complex_->matrix();
}

double QuantumFisherOperator::quad_form(const RVector& v) const {
  if (real_) return real_->form(v, v);
  return complex_->form(v.cast<Complex>(), v.cast<Complex>()).real();
}

Complex QuantumFisherOperator::pinv_pairing(const RVector& u, const RVector& v) const {
  if (real_) return real_->pinv_form(u, v);
  return complex_->pinv_form(u.cast<Complex>(), v.cast<Complex>());
}

double QuantumFisherOperator::kernel_violation(const RVector& v) const {
  if (real_) return real_->kernel_violation(v);
  return complex_->kernel_violation(v.cast<Complex>());
}

QuantumFisherOperator quantum_fisher(const QuantumState& s, const MonotoneFunction& f,
                                     const std::optional<KrausChannel>& channel) {
  const int d = s.dim();
  if (channel && channel->in_dim() != d)
    throw Error(ErrorCode::InvalidOperand, "channel input dimension does not match the state");
  const CMatrix rho = channel ? apply_channel(*channel, s.density()) : s.density();
  const SuperOperatorKf k(rho, f);

  std::vector<CMatrix> directions;
  directions.reserve(static_cast<std::size_t>(tangent_dim(d)));
  RVector unit = RVector::Zero(tangent_dim(d));
  for (int a = 0; a < tangent_dim(d); ++a) {
    unit(a) = 1.0;
    const CMatrix e = from_tangent_coords(unit, d);
    directions.push_back(channel ? apply_channel(*channel, e) : e);
    unit(a) = 0.0;
  }
  const CMatrix factor = fisher_factor(k, directions);
  if (f.symmetric()) {
    // J = Re(F^dagger F); stacking real and imaginary parts gives a real factor.
    RMatrix rf(2 * factor.rows(), factor.cols());
    rf << factor.real(), factor.imag();
    return QuantumFisherOperator(f.name(), PsdOperator<double>::from_factor(rf));
  }
  return QuantumFisherOperator(f.name(), PsdOperator<Complex>::from_factor(factor));
}

QuantumCrReport quantum_cr_check(const QuantumState& s, const Povm& m) {
  const FisherOperator jm = fisher_operator(model_from_povm(s, m));
  const QuantumFisherOperator js = quantum_fisher(s, MonotoneFunction::sld());
  const QuantumFisherOperator jr = quantum_fisher(s, MonotoneFunction::rld());
  QuantumCrReport r;
  r.sld_norm = js.norm();
  r.rld_norm = jr.norm();
  r.sld_gap_min_eig = min_eigenvalue(RMatrix(js.real_operator().matrix() - jm.matrix()));
  r.rld_gap_min_eig = min_eigenvalue(CMatrix(jr.complex_matrix() - jm.matrix().cast<Complex>()));
  r.holds = r.sld_gap_min_eig >= -1e-8 * r.sld_norm && r.rld_gap_min_eig >= -1e-8 * r.rld_norm;
  return r;
}

Povm sld_optimal_pvm(const QuantumState& s, const TangentVector& phi) {
  const LogDerivative l = log_derivative(s, phi, MonotoneFunction::sld());
  if (l.matrix.norm() == 0.0) return Povm::discrete({"1"}, {CMatrix::Identity(s.dim(), s.dim())});
  return spectral_measure(l.matrix).pvm;
}

Complex monotone_metric_value(const QuantumState& s, const MonotoneFunction& f, const CMatrix& v,
                              const CMatrix& w) {
  if (v.rows() != s.dim() || w.rows() != s.dim() || v.cols() != s.dim() || w.cols() != s.dim())
    throw Error(ErrorCode::InvalidOperand, "metric arguments must match the state dimension");
  const SuperOperatorKf k(s.density(), f);
  return hs_inner(v, k.apply_inverse(w));
}

}  // namespace urlab
