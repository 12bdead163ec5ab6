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

#include <optional>
#include <string>

#include "urlab/classical_fisher.hpp"
#include "urlab/operator_core.hpp"
#include "urlab/quantum_model.hpp"

namespace urlab {

/// L^f(phi) = (K_rho^f)^{-1}(phi). Hermitian for symmetric f; the RLD
/// derivative is rho^{-1} phi.
struct LogDerivative {
  TangentVector direction;
  std::string kind;
  CMatrix matrix;
};

LogDerivative log_derivative(const QuantumState& s, const TangentVector& phi, const MonotoneFunction& f);

/// f-Fisher operator J_ab = Tr[e_a L^f(e_b)] on tangent coordinates. For a
/// symmetric f the operator is real symmetric and stored in real form;
/// otherwise it is complex Hermitian on complexified coordinates.
class QuantumFisherOperator {
 public:
  QuantumFisherOperator(std::string kind, PsdOperator<double> op);
  QuantumFisherOperator(std::string kind, PsdOperator<Complex> op);

  const std::string& kind() const { return kind_; }
  bool is_real() const { return real_.has_value(); }
  int dim() const;
  double norm() const;
  double min_eigenvalue() const;

  /// Throws InvalidOperand when the operator is complex.
  const PsdOperator<double>& real_operator() const;
  /// Complex view; built on the fly for real operators.
  PsdOperator<Complex> complex_operator() const;
  CMatrix complex_matrix() const;

  /// v^T J v for a real direction (real for both storage kinds).
  double quad_form(const RVector& v) const;
  /// u^T J^+ v on real coordinates.
  Complex pinv_pairing(const RVector& u, const RVector& v) const;
  double kernel_violation(const RVector& v) const;

 private:
  std::string kind_;
  std::optional<PsdOperator<double>> real_;
  std::optional<PsdOperator<Complex>> complex_;
};

/// Without a channel the model is theta -> rho0 + theta; with channel E it is
/// theta -> E(rho0 + theta), so entries are Tr[E(e_a) L^f_{E rho}(E(e_b))].
QuantumFisherOperator quantum_fisher(const QuantumState& s, const MonotoneFunction& f,
                                     const std::optional<KrausChannel>& channel = std::nullopt);

struct QuantumCrReport {
  double sld_gap_min_eig = 0.0;
  double rld_gap_min_eig = 0.0;
  double sld_norm = 0.0;
  double rld_norm = 0.0;
  bool holds = false;
};

/// J^M <= J^S and J^M <= J^R, each within 1e-8 times the quantum norm.
QuantumCrReport quantum_cr_check(const QuantumState& s, const Povm& m);

/// Spectral measure of L^S(phi). Attains (phi, J^S phi) classically.
Povm sld_optimal_pvm(const QuantumState& s, const TangentVector& phi);

/// Tr[V^dagger (K_rho^f)^{-1} W].
Complex monotone_metric_value(const QuantumState& s, const MonotoneFunction& f, const CMatrix& v,
                              const CMatrix& w);

}  // namespace urlab
