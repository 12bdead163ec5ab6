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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "urlab/operator_core.hpp"

namespace urlab {

/// Density matrix rho0 + theta of the affine state family. rho0 is a fixed
/// base point, theta a traceless Hermitian displacement.
class QuantumState {
 public:
  /// Throws InvalidOperand (not Hermitian / not unit trace) or SingularState
  /// (min eigenvalue of rho0 + theta below kPositivityFloor).
  QuantumState(const CMatrix& base, const TangentVector& displacement);

  static QuantumState from_density(const CMatrix& rho);
  static QuantumState maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& base() const { return base_; }
  const TangentVector& displacement() const { return theta_; }
  /// rho0 + theta
  const CMatrix& density() const { return rho_; }

  /// Same base point, displacement moved by `step`.
  QuantumState displaced(const TangentVector& step) const;

 private:
  CMatrix base_;
  TangentVector theta_;
  CMatrix rho_;
};

class Observable {
 public:
  explicit Observable(const CMatrix& m) : m_(m) {}
  explicit Observable(HermitianMatrix m) : m_(std::move(m)) {}

  int dim() const { return m_.dim(); }
  const CMatrix& matrix() const { return m_.matrix(); }
  const HermitianMatrix& hermitian() const { return m_; }

 private:
  HermitianMatrix m_;
};

/// Finite POVM. A grid POVM discretises a continuous density m(x): the
/// stored densities are m(x_i) and effect(i) = w_i m(x_i).
class Povm {
 public:
  enum class Kind { Discrete, Grid };

  /// Effects must be PSD and sum to the identity within 1e-8.
  static Povm discrete(std::vector<std::string> labels, std::vector<CMatrix> effects);
  /// Completeness sum_i w_i m(x_i) = I is enforced within 1e-6.
  static Povm grid(std::vector<RVector> points, std::vector<double> weights, std::vector<CMatrix> densities);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::size_t size() const { return effects_.size(); }
  const std::vector<std::string>& outcomes() const { return labels_; }
  /// Weighted effect of outcome i.
  const CMatrix& effect(std::size_t i) const { return effects_[i]; }
  const std::vector<CMatrix>& effects() const { return effects_; }
  const std::vector<RVector>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// True if every effect is idempotent within tol * max(1, ||E||).
  bool is_projective(double tol = 1e-8) const;

 private:
  Povm() = default;
  void validate(double completeness_tol) const;

  Kind kind_ = Kind::Discrete;
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<CMatrix> effects_;
  std::vector<RVector> points_;
  std::vector<double> weights_;
};

/// Trace-preserving channel in Kraus form; each operator maps C^in to C^out.
class KrausChannel {
 public:
  /// Throws InvalidOperand unless sum_k K_k^dagger K_k = I within 1e-10.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const CMatrix& u);
  /// Qubit depolarizing channel, sigma_i -> (1 - p) sigma_i.
  static KrausChannel depolarizing(double p);
  /// Complete dephasing in the computational basis.
  static KrausChannel full_dephasing(int dim);
  /// Schur-multiplier dephasing X_mn -> C_mn X_mn for a PSD correlation
  /// matrix C with unit diagonal. Kraus operators are diagonal, built from
  /// the eigendecomposition of C.
  static KrausChannel schur_dephasing(const RMatrix& correlation);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  /// Adjoint (Heisenberg-picture) map sum_k K^dagger Y K.
  CMatrix apply_adjoint(const CMatrix& y) const;

 private:
  std::vector<CMatrix> kraus_;
  int in_dim_ = 0;
  int out_dim_ = 0;
};

/// Finite-outcome CP instrument: outcome x carries Kraus set {K_{x,k}}.
class CpInstrument {
 public:
  /// Throws InvalidOperand unless the union of all Kraus sets is trace
  /// preserving within 1e-10.
  CpInstrument(std::vector<std::string> labels, std::vector<std::vector<CMatrix>> kraus_sets);

  /// Lueders instrument {sqrt(E_x)} of a POVM.
  static CpInstrument lueders(const Povm& povm);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  std::size_t size() const { return kraus_sets_.size(); }
  const std::vector<std::string>& outcomes() const { return labels_; }
  const std::vector<std::vector<CMatrix>>& kraus_sets() const { return kraus_sets_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<CMatrix>> kraus_sets_;
  int in_dim_ = 0;
  int out_dim_ = 0;
};

double expectation(const QuantumState& s, const Observable& a);
double variance(const QuantumState& s, const Observable& a);
/// <A^dagger B> - <A><B>
Complex correlation(const QuantumState& s, const Observable& a, const Observable& b);
/// (C(A,B) + C(B,A)) / 2
double sym_correlation(const QuantumState& s, const Observable& a, const Observable& b);
/// Gradient of theta -> <A>_theta; the traceless part of A.
TangentVector grad_expectation(const QuantumState& s, const Observable& a);

CMatrix apply_channel(const KrausChannel& ch, const CMatrix& x);
/// Pushes a state through a channel; the result is a new base point.
QuantumState apply_channel(const KrausChannel& ch, const QuantumState& s);
/// Pushes a tangent vector (trace and Hermiticity are preserved).
TangentVector apply_channel(const KrausChannel& ch, const TangentVector& v);

Povm induced_povm(const CpInstrument& ins);
KrausChannel average_channel(const CpInstrument& ins);

/// Spectral measure of A with eigenvalues clustered by |l_i - l_j| <= tol;
/// the default tolerance is 1e-8 * ||A||. Labels are the cluster means.
Povm pvm_of_observable(const Observable& a, std::optional<double> degeneracy_tol = {});

/// Same clustering, also returning the cluster eigenvalues.
struct SpectralMeasure {
  Povm pvm;
  std::vector<double> eigenvalues;
};
SpectralMeasure spectral_measure(const CMatrix& hermitian, std::optional<double> degeneracy_tol = {});

/// Outcome probabilities Tr[rho E_x], clipped at zero.
RVector outcome_probabilities(const QuantumState& s, const Povm& m);

/// Inverse-CDF draws from a finite distribution. Draw k uses counter k of a
/// CounterRng seeded with `seed`, so results do not depend on how the draws
/// are partitioned.
std::vector<std::size_t> sample_indices(const RVector& probs, std::size_t n, std::uint64_t seed);

/// i.i.d. outcome indices (into m.outcomes()) for n measurements of s.
std::vector<std::size_t> sample_outcomes(const QuantumState& s, const Povm& m, std::size_t n, std::uint64_t seed);

}  // namespace urlab
