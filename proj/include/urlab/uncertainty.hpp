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
#include <utility>

#include "urlab/classical_fisher.hpp"
#include "urlab/quantum_fisher.hpp"
#include "urlab/quantum_model.hpp"

namespace urlab {

/// Gradients with ||P_ker a|| above this fraction of ||a|| give an infinite
/// error or disturbance.
inline constexpr double kKernelTolerance = 1e-8;
/// A vector in range(J) is only reproduced to about eps ||J|| ||J^+ a||, so
/// kernel components below kKernelResolution times that are rounding noise.
inline constexpr double kKernelResolution = 1e4;

/// Kernel-violation threshold for the +infinity branch:
/// max(kKernelTolerance ||a||, kKernelResolution eps ||J|| ||J^+ a||). The
/// second term only matters for badly conditioned J.
double kernel_threshold(double j_norm, double pinv_a_norm, double a_norm);

/// Value of an error or disturbance. `infinite` is the +infinity sentinel;
/// `value` is meaningful only when it is false.
struct ErrorResult {
  bool infinite = false;
  double value = 0.0;
  double quad_form = 0.0;  // (a, J^+ a)
  double variance = 0.0;   // sigma^2(A)
  double kernel_violation = 0.0;
  /// Rounding-error estimate for quad_form: eps ||J|| ||J^+ a||^2.
  double resolution = 0.0;
};

/// eps(A; rho, M) = (a, (J^M)^+ a) - sigma^2(A), a = grad <A>.
ErrorResult measurement_error(const QuantumState& s, const Observable& a, const Povm& m);

/// eta(A; rho, E) with the SLD operator of theta -> E(rho0 + theta).
ErrorResult disturbance(const QuantumState& s, const Observable& a, const KrausChannel& e);

/// (eps(A; induced POVM), eta(B; average channel)).
std::pair<ErrorResult, ErrorResult> instrument_error_disturbance(const QuantumState& s, const Observable& a,
                                                                 const Observable& b, const CpInstrument& ins);

/// Effects sum_k K_{x,k}^dagger P_y K_{x,k}, labelled "x|y", x-major. The
/// second argument must be projective on the instrument's output space.
Povm joint_povm(const CpInstrument& ins, const Povm& pvm);

/// Output-space PVM used as the second marginal in the error-disturbance
/// report.
enum class SecondMarginal {
  /// Spectral measure of L^S_{E rho}(E(phi)), phi = (J^S_{E rho})^+ b. The
  /// resulting marginal attains eps(B; M) = eta(B; I). Falls back to
  /// SpectralMeasure when eta(B; I) is infinite.
  DisturbanceOptimal,
  /// Spectral measure of B itself (output dimension must equal input).
  SpectralMeasure,
};

enum class Relation { ErrorError, ErrorDisturbance };

struct UncertaintyReport {
  Relation relation = Relation::ErrorError;
  ErrorResult eps_a;
  ErrorResult eps_or_eta_b;
  double r_term = 0.0;
  double commutator_term = 0.0;
  bool lhs_infinite = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // lhs - rhs; meaningless when lhs_infinite
  bool holds = false;

  // Error-disturbance only: errors under the joint POVM and the two
  // domination checks eps(A; I) >= eps(A; M), eta(B; I) >= eps(B; M).
  std::optional<ErrorResult> joint_eps_a;
  std::optional<ErrorResult> joint_eps_b;
  bool domination_a = true;
  bool domination_b = true;
  std::size_t joint_outcomes = 0;
};

/// R^M(A, B) = (a, (J^M)^+ b) - C^S(A, B).
double r_term(const QuantumState& s, const Observable& a, const Observable& b, const FisherOperator& jm);

/// 1/4 |<[A, B]>|^2.
double commutator_term(const QuantumState& s, const Observable& a, const Observable& b);

UncertaintyReport error_error_report(const QuantumState& s, const Observable& a, const Observable& b,
                                     const Povm& m);

UncertaintyReport error_disturbance_report(const QuantumState& s, const Observable& a, const Observable& b,
                                           const CpInstrument& ins,
                                           SecondMarginal marginal = SecondMarginal::DisturbanceOptimal);

/// True when x >= y - tol * max(1, |y|) - 100 (x.resolution + y.resolution),
/// with +infinity on either side handled.
bool dominates(const ErrorResult& x, const ErrorResult& y, double tol = 1e-8);

}  // namespace urlab
