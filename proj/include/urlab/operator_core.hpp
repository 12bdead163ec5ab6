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

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "urlab/error.hpp"

namespace urlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Smallest eigenvalue a state may have before superoperators built on it
/// are rejected as singular.
inline constexpr double kPositivityFloor = 1e-10;

/// Relative tolerance of the Hermiticity check on construction.
inline constexpr double kHermitianTolerance = 1e-12;

bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTolerance);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const CMatrix& m);
double min_eigenvalue(const RMatrix& m);

/// Spectral norm (largest singular value).
double operator_norm(const CMatrix& m);

/// Complex square matrix checked to equal its adjoint. The stored entries are
/// symmetrised so downstream code sees an exactly Hermitian matrix.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

// ---------------------------------------------------------------------------
// Tangent space of traceless Hermitian matrices.
//
// Coordinates are taken in a fixed orthonormal (Hilbert-Schmidt) basis of
// generalized Gell-Mann matrices, ordered as:
//   1. symmetric pairs    (E_jk + E_kj)/sqrt(2),        j < k, row-major
//   2. antisymmetric pairs (-i E_jk + i E_kj)/sqrt(2),  j < k, row-major
//   3. diagonals diag(1,...,1,-l,0,...,0)/sqrt(l(l+1)), l = 1..d-1
// For d = 2 this is {sigma_x, sigma_y, sigma_z}/sqrt(2).

inline int tangent_dim(int d) { return d * d - 1; }

/// Coordinates Tr[e_a X] of a matrix in the tangent basis. For Hermitian X
/// the real overload is exact; the complex overload is used for the
/// complexified tangent space.
RVector tangent_coords(const CMatrix& x);
CVector tangent_coords_complex(const CMatrix& x);

/// Inverse of tangent_coords: sum_a c_a e_a.
CMatrix from_tangent_coords(const RVector& c, int d);
CMatrix from_tangent_coords(const CVector& c, int d);

class TangentVector {
 public:
  /// Throws InvalidOperand unless `m` is Hermitian and traceless.
  static TangentVector from_matrix(const CMatrix& m);
  static TangentVector from_coords(const RVector& coords, int dim);
  static TangentVector zero(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }
  const RVector& coords() const { return coords_; }

 private:
  TangentVector(CMatrix entries, RVector coords)
      : entries_(std::move(entries)), coords_(std::move(coords)) {}

  CMatrix entries_;
  RVector coords_;
};

struct OrthonormalTangentBasis {
  int dim = 0;
  std::vector<TangentVector> elements;
};

/// Throws InvalidDimension for dim < 2.
OrthonormalTangentBasis tangent_basis(int dim);

/// A - (Tr A / d) I.
TangentVector project_traceless(const HermitianMatrix& a);

/// Tr[A^dagger B].
Complex hs_inner(const CMatrix& a, const CMatrix& b);

// ---------------------------------------------------------------------------
// Moore-Penrose inverse.

template <typename Scalar>
struct PseudoInverse {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inverse;
  int rank = 0;
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> kernel_basis;
  double tolerance = 0.0;
};

/// SVD-based pseudoinverse. Singular values <= rank_tol are treated as zero;
/// when rank_tol is empty the cutoff is dim * eps * sigma_max.
PseudoInverse<Complex> mp_inverse(const CMatrix& s, std::optional<double> rank_tol = {});
PseudoInverse<double> mp_inverse(const RMatrix& s, std::optional<double> rank_tol = {});

struct SchurReport {
  bool is_psd = false;
  bool cond2 = false;
  bool cond3 = false;
  CMatrix schur_MA;  // C - B^dagger A^+ B
  CMatrix schur_MC;  // A - B C^+ B^dagger
};

/// Evaluates the three equivalent characterisations of positivity of the
/// block matrix [[A, B], [B^dagger, C]]. All PSD and range tests use the
/// tolerance 1e-9 * ||M||.
SchurReport schur_positivity_report(const CMatrix& a, const CMatrix& b, const CMatrix& c);

// ---------------------------------------------------------------------------
// PSD operators with cached pseudoinverse (Fisher operators, classical and
// quantum, are instances).

template <typename Scalar>
class PsdOperator {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  PsdOperator() = default;

  /// From a Hermitian PSD matrix (eigendecomposition route).
  static PsdOperator from_matrix(const Matrix& m, std::optional<double> rank_tol = {});

  /// From a factor F with M = F^dagger F. When F is thin in either direction
  /// the spectrum comes from an SVD of F, which avoids squaring the
  /// condition number of M.
  static PsdOperator from_factor(const Matrix& f, std::optional<double> rank_tol = {});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int rank() const { return static_cast<int>(range_.cols()); }
  double tolerance() const { return tolerance_; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& pinv() const { return pinv_; }
  const RVector& eigenvalues() const { return eigenvalues_; }
  double min_eigenvalue() const { return eigenvalues_.size() ? eigenvalues_.minCoeff() : 0.0; }
  double norm() const { return eigenvalues_.size() ? eigenvalues_.cwiseAbs().maxCoeff() : 0.0; }

  /// Orthonormal basis of the numerical range, one column per vector.
  const Matrix& range_basis() const { return range_; }
  /// Orthonormal basis of the numerical kernel (complement of range_basis).
  std::vector<Vector> kernel_basis() const;

  /// Component of v in the kernel and its norm.
  Vector kernel_component(const Vector& v) const;
  double kernel_violation(const Vector& v) const { return kernel_component(v).norm(); }

  /// u^dagger M v and u^dagger M^+ v.
  Scalar form(const Vector& u, const Vector& v) const { return u.dot(matrix_ * v); }
  Scalar pinv_form(const Vector& u, const Vector& v) const { return u.dot(pinv_ * v); }

 private:
  Matrix matrix_;
  Matrix pinv_;
  Matrix range_;
  RVector eigenvalues_;
  double tolerance_ = 0.0;
};

extern template class PsdOperator<double>;
extern template class PsdOperator<Complex>;

// ---------------------------------------------------------------------------
// Operator monotone functions and the superoperator K_rho^f.

class MonotoneFunction {
 public:
  using Scalar = std::function<double(double)>;
  using Kernel = std::function<double(double, double)>;

  /// (x + 1) / 2
  static MonotoneFunction sld();
  /// x
  static MonotoneFunction rld();
  /// (x - 1) / ln x, the Kubo-Mori / Bogoliubov function.
  static MonotoneFunction bogoliubov();
  /// User function. Positivity and monotonicity are checked on a grid of
  /// 1000 points in (0, 1000]; matrix monotonicity is assumed, not certified.
  static MonotoneFunction custom(std::string name, Scalar f);

  const std::string& name() const { return name_; }
  double operator()(double x) const { return f_(x); }

  /// b * f(a / b), the eigenbasis multiplier of K_rho^f.
  double kernel_coefficient(double a, double b) const { return kernel_(a, b); }

  /// True when x f(1/x) = f(x), i.e. the multiplier is symmetric in (a, b)
  /// and real directions have real Fisher forms.
  bool symmetric() const { return symmetric_; }

 private:
  MonotoneFunction(std::string name, Scalar f, Kernel k, bool symmetric)
      : name_(std::move(name)), f_(std::move(f)), kernel_(std::move(k)), symmetric_(symmetric) {}

  std::string name_;
  Scalar f_;
  Kernel kernel_;
  bool symmetric_ = false;
};

/// K_rho^f represented in the eigenbasis of rho: (K X)_ij = c_f(l_i, l_j) X_ij.
class SuperOperatorKf {
 public:
  /// Throws SingularState if an eigenvalue of rho is below kPositivityFloor,
  /// InvalidOperand if rho is not Hermitian.
  SuperOperatorKf(const CMatrix& rho, MonotoneFunction f);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  const RVector& state_eigenvalues() const { return eigenvalues_; }
  const CMatrix& state_eigenvectors() const { return eigenvectors_; }
  const MonotoneFunction& function() const { return f_; }
  /// c_f(l_i, l_j).
  const RMatrix& coefficients() const { return coeff_; }

  CMatrix apply(const CMatrix& x) const;
  CMatrix apply_inverse(const CMatrix& x) const;

  CMatrix to_eigenbasis(const CMatrix& x) const { return eigenvectors_.adjoint() * x * eigenvectors_; }
  CMatrix from_eigenbasis(const CMatrix& x) const { return eigenvectors_ * x * eigenvectors_.adjoint(); }

 private:
  RVector eigenvalues_;
  CMatrix eigenvectors_;
  MonotoneFunction f_;
  RMatrix coeff_;
};

inline CMatrix apply_kf(const SuperOperatorKf& k, const CMatrix& x) { return k.apply(x); }
inline CMatrix apply_kf_inverse(const SuperOperatorKf& k, const CMatrix& x) { return k.apply_inverse(x); }

}  // namespace urlab
