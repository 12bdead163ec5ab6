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

#include "urlab/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace urlab {

double kernel_threshold(double j_norm, double pinv_a_norm, double a_norm) {
  return std::max(kKernelTolerance * a_norm,
                  kKernelResolution * std::numeric_limits<double>::epsilon() * j_norm * pinv_a_norm);
}

namespace {

template <typename Op>
ErrorResult error_from_operator(const Op& j, const RVector& a, double var) {
  ErrorResult r;
  r.variance = var;
  r.kernel_violation = j.kernel_violation(a);
  const double pinv_a = (j.pinv() * a).norm();
  r.resolution = std::numeric_limits<double>::epsilon() * j.norm() * pinv_a * pinv_a;
  if (r.kernel_violation > kernel_threshold(j.norm(), pinv_a, a.norm())) {
    r.infinite = true;
    return r;
  }
  r.quad_form = j.pinv_form(a, a);
  r.value = r.quad_form - var;
  return r;
}

void finish(UncertaintyReport& r) {
  const ErrorResult& x = r.eps_a;
  const ErrorResult& y = r.eps_or_eta_b;
  r.rhs = r.r_term * r.r_term + r.commutator_term;
  // Any infinite factor makes the product infinite, including 0 * inf.
  r.lhs_infinite = x.infinite || y.infinite;
  if (r.lhs_infinite) {
    r.lhs = 0.0;
    r.gap = 0.0;
    r.holds = true;
  } else {
    r.lhs = x.value * y.value;
    r.gap = r.lhs - r.rhs;
    r.holds = r.gap >= -1e-8 * std::max(1.0, r.rhs);
  }
  r.holds = r.holds && r.domination_a && r.domination_b;
}

Povm trivial_povm(int d) { return Povm::discrete({"1"}, {CMatrix::Identity(d, d)}); }

Povm second_marginal(const QuantumState& s, const Observable& b, const CpInstrument& ins, SecondMarginal mode,
                     const ErrorResult& eta_b) {
  const bool same_dim = ins.out_dim() == ins.in_dim();
  if (mode == SecondMarginal::SpectralMeasure || eta_b.infinite) {
    if (!same_dim) {
      if (mode == SecondMarginal::SpectralMeasure)
        throw Error(ErrorCode::InvalidOperand, "spectral second marginal needs equal input and output dimensions");
      return trivial_povm(ins.out_dim());
    }
    return pvm_of_observable(b);
  }
  const KrausChannel e = average_channel(ins);
  const QuantumFisherOperator js = quantum_fisher(s, MonotoneFunction::sld(), e);
  const RVector phi = js.real_operator().pinv() * grad_expectation(s, b).coords();
  const CMatrix pushed = apply_channel(e, from_tangent_coords(phi, s.dim()));
  const SuperOperatorKf k(apply_channel(e, s.density()), MonotoneFunction::sld());
  CMatrix l = k.apply_inverse(pushed);
  l = 0.5 * (l + l.adjoint()).eval();
  if (l.norm() == 0.0) return trivial_povm(ins.out_dim());
  // No eigenvalue clustering: ||L|| grows with eta, and a relative cluster
  // tolerance would merge eigenvalues the bound depends on. Any refinement
  // of the spectral measure of L is still optimal.
  return spectral_measure(l, 0.0).pvm;
}

}  // namespace

ErrorResult measurement_error(const QuantumState& s, const Observable& a, const Povm& m) {
  if (a.dim() != s.dim() || m.dim() != s.dim())
    throw Error(ErrorCode::InvalidOperand, "observable, POVM and state dimensions must agree");
  const FisherOperator j = fisher_operator(model_from_povm(s, m));
  return error_from_operator(j, grad_expectation(s, a).coords(), variance(s, a));
}

ErrorResult disturbance(const QuantumState& s, const Observable& a, const KrausChannel& e) {
  if (a.dim() != s.dim() || e.in_dim() != s.dim())
    throw Error(ErrorCode::InvalidOperand, "observable, channel and state dimensions must agree");
  const QuantumFisherOperator j = quantum_fisher(s, MonotoneFunction::sld(), e);
  return error_from_operator(j.real_operator(), grad_expectation(s, a).coords(), variance(s, a));
}

std::pair<ErrorResult, ErrorResult> instrument_error_disturbance(const QuantumState& s, const Observable& a,
                                                                 const Observable& b, const CpInstrument& ins) {
  return {measurement_error(s, a, induced_povm(ins)), disturbance(s, b, average_channel(ins))};
}

Povm joint_povm(const CpInstrument& ins, const Povm& pvm) {
  if (pvm.dim() != ins.out_dim())
    throw Error(ErrorCode::InvalidOperand, "PVM dimension must equal the instrument output dimension");
  if (!pvm.is_projective(1e-8)) throw Error(ErrorCode::InvalidOperand, "second marginal must be projective");
  std::vector<std::string> labels;
  std::vector<CMatrix> effects;
  for (std::size_t x = 0; x < ins.size(); ++x) {
    for (std::size_t y = 0; y < pvm.size(); ++y) {
      CMatrix e = CMatrix::Zero(ins.in_dim(), ins.in_dim());
      for (const CMatrix& k : ins.kraus_sets()[x]) e += k.adjoint() * pvm.effect(y) * k;
      effects.push_back(0.5 * (e + e.adjoint()));
      labels.push_back(ins.outcomes()[x] + "|" + pvm.outcomes()[y]);
    }
  }
  return Povm::discrete(std::move(labels), std::move(effects));
}

double r_term(const QuantumState& s, const Observable& a, const Observable& b, const FisherOperator& jm) {
  const RVector ga = grad_expectation(s, a).coords();
  const RVector gb = grad_expectation(s, b).coords();
  return jm.pinv_form(ga, gb) - sym_correlation(s, a, b);
}

double commutator_term(const QuantumState& s, const Observable& a, const Observable& b) {
  const CMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return 0.25 * std::norm((s.density() * c).trace());
}

UncertaintyReport error_error_report(const QuantumState& s, const Observable& a, const Observable& b,
                                     const Povm& m) {
  UncertaintyReport r;
  r.relation = Relation::ErrorError;
  const FisherOperator j = fisher_operator(model_from_povm(s, m));
  r.eps_a = error_from_operator(j, grad_expectation(s, a).coords(), variance(s, a));
  r.eps_or_eta_b = error_from_operator(j, grad_expectation(s, b).coords(), variance(s, b));
  r.r_term = r_term(s, a, b, j);
  r.commutator_term = commutator_term(s, a, b);
  finish(r);
  return r;
}

bool dominates(const ErrorResult& x, const ErrorResult& y, double tol) {
  if (x.infinite) return true;
  if (y.infinite) return false;
  return x.value >= y.value - tol * std::max(1.0, std::abs(y.value)) - 100.0 * (x.resolution + y.resolution);
}

UncertaintyReport error_disturbance_report(const QuantumState& s, const Observable& a, const Observable& b,
                                           const CpInstrument& ins, SecondMarginal marginal) {
  UncertaintyReport r;
  r.relation = Relation::ErrorDisturbance;
  std::tie(r.eps_a, r.eps_or_eta_b) = instrument_error_disturbance(s, a, b, ins);

  const Povm m = joint_povm(ins, second_marginal(s, b, ins, marginal, r.eps_or_eta_b));
  r.joint_outcomes = m.size();
  const FisherOperator j = fisher_operator(model_from_povm(s, m));
  r.joint_eps_a = error_from_operator(j, grad_expectation(s, a).coords(), variance(s, a));
  r.joint_eps_b = error_from_operator(j, grad_expectation(s, b).coords(), variance(s, b));
  r.domination_a = dominates(r.eps_a, *r.joint_eps_a);
  r.domination_b = dominates(r.eps_or_eta_b, *r.joint_eps_b);
  r.r_term = r_term(s, a, b, j);
  r.commutator_term = commutator_term(s, a, b);
  finish(r);
  return r;
}

}  // namespace urlab
