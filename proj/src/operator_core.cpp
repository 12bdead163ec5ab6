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

#include "urlab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace urlab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::InvalidOperand: return "invalid-operand";
    case ErrorCode::SingularState: return "singular-state";
    case ErrorCode::SingularModel: return "singular-model";
    case ErrorCode::NoUnbiasedEstimator: return "no-unbiased-estimator";
    case ErrorCode::Config: return "config";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kSqrtHalf = std::sqrt(0.5);

void require_dim(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "dimension must be at least 2, got " + std::to_string(d));
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::InvalidOperand, std::string(what) + " must be a non-empty square matrix");
}

template <typename Vec>
Vec coords_impl(const CMatrix& x) {
  using S = typename Vec::Scalar;
  const int d = static_cast<int>(x.rows());
  Vec c(tangent_dim(d));
  const Complex i1(0.0, 1.0);
  int idx = 0;
  auto take = [](Complex z) -> S {
    if constexpr (std::is_same_v<S, double>) return z.real(); else return z;
  };
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) c(idx++) = take((x(j, k) + x(k, j)) * kSqrtHalf);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) c(idx++) = take((i1 * x(j, k) - i1 * x(k, j)) * kSqrtHalf);
  Complex prefix = 0.0;
  for (int l = 1; l < d; ++l) {
    prefix += x(l - 1, l - 1);
    const double norm = std::sqrt(static_cast<double>(l) * (l + 1));
    c(idx++) = take((prefix - static_cast<double>(l) * x(l, l)) / norm);
  }
  return c;
}

template <typename Vec>
CMatrix from_coords_impl(const Vec& c, int d) {
  require_dim(d);
  if (c.size() != tangent_dim(d)) throw Error(ErrorCode::InvalidOperand, "coordinate vector has wrong length");
  CMatrix x = CMatrix::Zero(d, d);
  const Complex i1(0.0, 1.0);
  int idx = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k, ++idx) {
      const Complex v = Complex(c(idx)) * kSqrtHalf;
      x(j, k) += v;
      x(k, j) += v;
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k, ++idx) {
      const Complex v = Complex(c(idx)) * kSqrtHalf;
      x(j, k) += -i1 * v;
      x(k, j) += i1 * v;
    }
  // Diagonal generators accumulate as a suffix sum over l > i.
  Complex suffix = 0.0;
  std::vector<Complex> diag(d, 0.0);
  for (int l = d - 1; l >= 1; --l) {
    const double norm = std::sqrt(static_cast<double>(l) * (l + 1));
    const Complex v = Complex(c(idx + l - 1)) / norm;
    diag[l] += -static_cast<double>(l) * v;
    suffix += v;
    diag[l - 1] += suffix;
  }
  for (int i = 0; i < d; ++i) x(i, i) += diag[i];
  return x;
}

}  // namespace

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * std::max(scale, 1e-300);
}

double min_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const RMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require_square(m, "Hermitian matrix");
  require_dim(static_cast<int>(m.rows()));
  if (!m.allFinite()) throw Error(ErrorCode::InvalidOperand, "matrix has non-finite entries");
  if (!is_hermitian(m)) throw Error(ErrorCode::InvalidOperand, "matrix is not Hermitian");
  m_ = 0.5 * (m + m.adjoint());
}

RVector tangent_coords(const CMatrix& x) {
  require_square(x, "tangent operand");
  return coords_impl<RVector>(x);
}

CVector tangent_coords_complex(const CMatrix& x) {
  require_square(x, "tangent operand");
  return coords_impl<CVector>(x);
}

CMatrix from_tangent_coords(const RVector& c, int d) { return from_coords_impl(c, d); }
CMatrix from_tangent_coords(const CVector& c, int d) { return from_coords_impl(c, d); }

TangentVector TangentVector::from_matrix(const CMatrix& m) {
  HermitianMatrix h(m);
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (std::abs(h.matrix().trace()) > 1e-12 * scale)
    throw Error(ErrorCode::InvalidOperand, "tangent vector must be traceless");
  RVector c = tangent_coords(h.matrix());
  CMatrix e = from_tangent_coords(c, h.dim());
  return TangentVector(std::move(e), std::move(c));
}

TangentVector TangentVector::from_coords(const RVector& coords, int dim) {
  require_dim(dim);
  CMatrix e = from_tangent_coords(coords, dim);
  return TangentVector(std::move(e), coords);
}

TangentVector TangentVector::zero(int dim) {
  require_dim(dim);
  return TangentVector(CMatrix::Zero(dim, dim), RVector::Zero(tangent_dim(dim)));
}

OrthonormalTangentBasis tangent_basis(int dim) {
  require_dim(dim);
  OrthonormalTangentBasis basis;
  basis.dim = dim;
  const int m = tangent_dim(dim);
  basis.elements.reserve(m);
  for (int a = 0; a < m; ++a) basis.elements.push_back(TangentVector::from_coords(RVector::Unit(m, a), dim));
  return basis;
}

TangentVector project_traceless(const HermitianMatrix& a) {
  const int d = a.dim();
  CMatrix p = a.matrix() - (a.matrix().trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
  for (int i = 0; i < d; ++i) p(i, i) = p(i, i).real();
  return TangentVector::from_coords(tangent_coords(p), d);
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidOperand, "Hilbert-Schmidt inner product of mismatched shapes");
  return (a.conjugate().cwiseProduct(b)).sum();
}

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
PseudoInverse<Scalar> mp_inverse_impl(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& s,
                                      std::optional<double> rank_tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  PseudoInverse<Scalar> out;
  if (s.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const auto n = std::max(s.rows(), s.cols());
  out.tolerance = rank_tol ? *rank_tol : static_cast<double>(n) * kEps * smax;
  int r = 0;
  while (r < sv.size() && sv(r) > out.tolerance) ++r;
  out.rank = r;
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  out.inverse = v.leftCols(r) * sv.head(r).cwiseInverse().asDiagonal() * u.leftCols(r).adjoint();
  for (Eigen::Index k = r; k < v.cols(); ++k) out.kernel_basis.emplace_back(v.col(k));
  return out;
}

}  // namespace

PseudoInverse<Complex> mp_inverse(const CMatrix& s, std::optional<double> rank_tol) {
  return mp_inverse_impl<Complex>(s, rank_tol);
}

PseudoInverse<double> mp_inverse(const RMatrix& s, std::optional<double> rank_tol) {
  return mp_inverse_impl<double>(s, rank_tol);
}

SchurReport schur_positivity_report(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || b.rows() != a.rows() || b.cols() != c.rows())
    throw Error(ErrorCode::InvalidOperand, "incompatible block shapes");
  if (!is_hermitian(a, 1e-10) || !is_hermitian(c, 1e-10))
    throw Error(ErrorCode::InvalidOperand, "diagonal blocks must be Hermitian");
  const auto p = a.rows();
  const auto q = c.rows();
  CMatrix m(p + q, p + q);
  m << a, b, b.adjoint(), c;
  const double tol = 1e-9 * std::max(operator_norm(m), 1e-300);

  SchurReport rep;
  rep.is_psd = min_eigenvalue(m) >= -tol;

  const CMatrix a_pinv = mp_inverse(a).inverse;
  const CMatrix c_pinv = mp_inverse(c).inverse;
  rep.schur_MA = c - b.adjoint() * a_pinv * b;
  rep.schur_MC = a - b * c_pinv * b.adjoint();

  // ran B in ran A  <=>  (I - A A^+) B = 0
  const bool range_a = (b - a * a_pinv * b).norm() <= tol;
  // (ker B)^perp in (ker C)^perp  <=>  ran B^dagger in ran C
  const bool range_c = (b.adjoint() - c * c_pinv * b.adjoint()).norm() <= tol;
  rep.cond2 = min_eigenvalue(a) >= -tol && range_a && min_eigenvalue(rep.schur_MA) >= -tol;
  rep.cond3 = min_eigenvalue(c) >= -tol && range_c && min_eigenvalue(rep.schur_MC) >= -tol;
  return rep;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
PsdOperator<Scalar> PsdOperator<Scalar>::from_matrix(const Matrix& m, std::optional<double> rank_tol) {
  PsdOperator op;
  op.matrix_ = 0.5 * (m + m.adjoint());
  const auto n = op.matrix_.rows();
  if (n == 0) return op;
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix_);
  op.eigenvalues_ = es.eigenvalues();
  const double lmax = op.eigenvalues_.cwiseAbs().maxCoeff();
  op.tolerance_ = rank_tol ? *rank_tol : static_cast<double>(n) * kEps * lmax;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < n; ++k)
    if (op.eigenvalues_(k) > op.tolerance_) kept.push_back(k);
  op.range_.resize(n, static_cast<Eigen::Index>(kept.size()));
  RVector inv(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    op.range_.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(kept[j]);
    inv(static_cast<Eigen::Index>(j)) = 1.0 / op.eigenvalues_(kept[j]);
  }
  op.pinv_ = op.range_ * inv.asDiagonal() * op.range_.adjoint();
  return op;
}

template <typename Scalar>
PsdOperator<Scalar> PsdOperator<Scalar>::from_factor(const Matrix& f, std::optional<double> rank_tol) {
  const auto n = f.cols();
  if (std::min(f.rows(), f.cols()) > 256) return from_matrix(f.adjoint() * f, rank_tol);

  PsdOperator op;
  op.matrix_ = f.adjoint() * f;
  op.matrix_ = 0.5 * (op.matrix_ + op.matrix_.adjoint()).eval();
  if (n == 0) return op;
  // JacobiSVD: Eigen 3.4.0's BDCSVD returns wrong singular values for some
  // structured complex factors (e.g. the RLD factor at d >= 5).
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinV);
  const RVector sv2 = svd.singularValues().array().square();
  op.eigenvalues_ = RVector::Zero(n);
  op.eigenvalues_.head(sv2.size()) = sv2;
  const double lmax = sv2.size() ? sv2(0) : 0.0;
  op.tolerance_ = rank_tol ? *rank_tol : static_cast<double>(n) * kEps * lmax;
  Eigen::Index r = 0;
  while (r < sv2.size() && sv2(r) > op.tolerance_) ++r;
  op.range_ = svd.matrixV().leftCols(r);
  op.pinv_ = op.range_ * sv2.head(r).cwiseInverse().asDiagonal() * op.range_.adjoint();
  return op;
}

template <typename Scalar>
std::vector<typename PsdOperator<Scalar>::Vector> PsdOperator<Scalar>::kernel_basis() const {
  const auto n = matrix_.rows();
  const auto r = range_.cols();
  std::vector<Vector> out;
  if (r == n) return out;
  Matrix q;
  if (r == 0) {
    q = Matrix::Identity(n, n);
  } else {
    Eigen::HouseholderQR<Matrix> qr(range_);
    q = qr.householderQ() * Matrix::Identity(n, n);
  }
  for (Eigen::Index k = r; k < n; ++k) out.emplace_back(q.col(k));
  return out;
}

template <typename Scalar>
typename PsdOperator<Scalar>::Vector PsdOperator<Scalar>::kernel_component(const Vector& v) const {
  if (v.size() != matrix_.rows()) throw Error(ErrorCode::InvalidOperand, "vector length does not match operator");
  if (range_.cols() == 0) return v;
  return v - range_ * (range_.adjoint() * v);
}

template class PsdOperator<double>;
template class PsdOperator<Complex>;

// ---------------------------------------------------------------------------

MonotoneFunction MonotoneFunction::sld() {
  return MonotoneFunction(
      "sld", [](double x) { return 0.5 * (x + 1.0); }, [](double a, double b) { return 0.5 * (a + b); }, true);
}

MonotoneFunction MonotoneFunction::rld() {
  return MonotoneFunction(
      "rld", [](double x) { return x; }, [](double a, double) { return a; }, false);
}

namespace {

// u / log(1 + u), continuous at u = 0.
double log_mean_ratio(double u) {
  if (std::abs(u) < 1e-8) return 1.0 + 0.5 * u;
  return u / std::log1p(u);
}

}  // namespace

MonotoneFunction MonotoneFunction::bogoliubov() {
  return MonotoneFunction(
      "bogoliubov", [](double x) { return log_mean_ratio(x - 1.0); },
      [](double a, double b) { return b * log_mean_ratio(a / b - 1.0); }, true);
}

MonotoneFunction MonotoneFunction::custom(std::string name, Scalar f) {
  if (!f) throw Error(ErrorCode::InvalidOperand, "monotone function is empty");
  constexpr int kGrid = 1000;
  double prev = -std::numeric_limits<double>::infinity();
  bool symmetric = true;
  for (int k = 0; k < kGrid; ++k) {
    const double x = std::pow(10.0, -3.0 + 6.0 * k / (kGrid - 1));
    const double fx = f(x);
    if (!std::isfinite(fx) || fx <= 0.0)
      throw Error(ErrorCode::InvalidOperand, name + " is not positive on (0, 1000]");
    if (fx < prev - 1e-12 * std::abs(prev))
      throw Error(ErrorCode::InvalidOperand, name + " is not nondecreasing on (0, 1000]");
    prev = fx;
    if (std::abs(x * f(1.0 / x) - fx) > 1e-12 * std::max(1.0, std::abs(fx))) symmetric = false;
  }
  auto kernel = [f](double a, double b) { return b * f(a / b); };
  return MonotoneFunction(std::move(name), std::move(f), std::move(kernel), symmetric);
}

SuperOperatorKf::SuperOperatorKf(const CMatrix& rho, MonotoneFunction f) : f_(std::move(f)) {
  require_square(rho, "state");
  if (!is_hermitian(rho, 1e-10)) throw Error(ErrorCode::InvalidOperand, "state is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  if (eigenvalues_.minCoeff() < kPositivityFloor)
    throw Error(ErrorCode::SingularState,
                "state eigenvalue " + std::to_string(eigenvalues_.minCoeff()) + " is below the positivity floor");
  const auto d = eigenvalues_.size();
  coeff_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) coeff_(i, j) = f_.kernel_coefficient(eigenvalues_(i), eigenvalues_(j));
}

CMatrix SuperOperatorKf::apply(const CMatrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) throw Error(ErrorCode::InvalidOperand, "operand dimension mismatch");
  CMatrix y = to_eigenbasis(x);
  y.array() *= coeff_.array().cast<Complex>();
  return from_eigenbasis(y);
}

CMatrix SuperOperatorKf::apply_inverse(const CMatrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) throw Error(ErrorCode::InvalidOperand, "operand dimension mismatch");
  CMatrix y = to_eigenbasis(x);
  y.array() /= coeff_.array().cast<Complex>();
  return from_eigenbasis(y);
}

}  // namespace urlab
