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

#include <doctest.h>

#include "oracles.hpp"
#include "urlab/operator_core.hpp"
#include "urlab/random.hpp"

using namespace urlab;

TEST_CASE("tangent basis matches explicit Gell-Mann matrices") {
  for (int d = 2; d <= 5; ++d) {
    const auto basis = tangent_basis(d);
    const auto ref = oracle::gell_mann(d);
    REQUIRE(basis.elements.size() == ref.size());
    for (std::size_t a = 0; a < ref.size(); ++a) {
      CHECK((basis.elements[a].entries() - ref[a]).norm() < 1e-15);
      for (std::size_t b = 0; b < ref.size(); ++b) {
        const double g = hs_inner(ref[a], ref[b]).real();
        CHECK(g == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
      }
    }
  }
  CHECK_THROWS_AS(tangent_basis(1), Error);
}

TEST_CASE("qubit tangent basis is the scaled Pauli triple") {
  const auto b = tangent_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((b.elements[0].entries() - r * oracle::pauli_x()).norm() < 1e-15);
  CHECK((b.elements[1].entries() - r * oracle::pauli_y()).norm() < 1e-15);
  CHECK((b.elements[2].entries() - r * oracle::pauli_z()).norm() < 1e-15);
}

TEST_CASE("tangent coordinates round trip") {
  CounterRng rng(7);
  for (int d = 2; d <= 6; ++d) {
    const TangentVector v = project_traceless(HermitianMatrix(random_hermitian(d, rng)));
    CHECK(std::abs(v.entries().trace()) < 1e-13);
    const auto ref = oracle::gell_mann(d);
    for (std::size_t a = 0; a < ref.size(); ++a)
      CHECK(v.coords()(static_cast<Eigen::Index>(a)) ==
            doctest::Approx((ref[a] * v.entries()).trace().real()).epsilon(1e-12));
    CHECK((from_tangent_coords(v.coords(), d) - v.entries()).norm() < 1e-12);
    const TangentVector w = TangentVector::from_coords(v.coords(), d);
    CHECK((w.entries() - v.entries()).norm() < 1e-12);
  }
}

TEST_CASE("tangent vectors reject non-traceless or non-Hermitian input") {
  CHECK_THROWS_AS(TangentVector::from_matrix(oracle::id(2)), Error);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(TangentVector::from_matrix(m), Error);
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions") {
  CounterRng rng(11);
  for (int t = 0; t < 50; ++t) {
    const int rows = 2 + static_cast<int>(rng.uniform() * 5);
    const int cols = 2 + static_cast<int>(rng.uniform() * 5);
    const int rank = 1 + static_cast<int>(rng.uniform() * std::min(rows, cols));
    const CMatrix left = random_ginibre(rows, rank, rng);
    const CMatrix a = left * random_ginibre(rank, cols, rng);
    const auto p = mp_inverse(a);
    CHECK(p.rank == rank);
    CHECK(oracle::penrose_residual(a, p.inverse) < 1e-9);
    CHECK(static_cast<int>(p.kernel_basis.size()) == cols - rank);
    for (const auto& k : p.kernel_basis) CHECK((a * k).norm() < 1e-9 * a.norm());
  }
  const RMatrix z = RMatrix::Zero(3, 3);
  const auto pz = mp_inverse(z);
  CHECK(pz.rank == 0);
  CHECK(pz.inverse.norm() == 0.0);
}

TEST_CASE("pseudoinverse of a diagonal matrix inverts the nonzero entries") {
  RMatrix a = RMatrix::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = 1e-20;
  a(2, 2) = -4.0;
  const auto p = mp_inverse(a);
  CHECK(p.rank == 2);
  CHECK(p.inverse(0, 0) == doctest::Approx(0.5));
  CHECK(p.inverse(1, 1) == 0.0);
  CHECK(p.inverse(2, 2) == doctest::Approx(-0.25));
  const auto q = mp_inverse(a, 3.0);
  CHECK(q.rank == 1);
}

TEST_CASE("Schur positivity characterisations agree") {
  CounterRng rng(13);
  int psd = 0;
  for (int t = 0; t < 100; ++t) {
    const int n1 = 1 + static_cast<int>(rng.uniform() * 3);
    const int n2 = 1 + static_cast<int>(rng.uniform() * 3);
    const int r = 1 + static_cast<int>(rng.uniform() * (n1 + n2));
    CMatrix g = random_ginibre(n1 + n2, r, rng);
    CMatrix m = g * g.adjoint();
    if (t % 2 == 1) m -= 0.3 * m.norm() / (n1 + n2) * CMatrix::Identity(n1 + n2, n1 + n2);
    const auto rep = schur_positivity_report(m.topLeftCorner(n1, n1), m.topRightCorner(n1, n2),
                                             m.bottomRightCorner(n2, n2));
    CHECK(rep.is_psd == rep.cond2);
    CHECK(rep.is_psd == rep.cond3);
    CHECK(rep.is_psd == (min_eigenvalue(m) >= -1e-9 * m.norm()));
    psd += rep.is_psd;
  }
  CHECK(psd >= 40);
  CHECK(psd <= 60);
}

TEST_CASE("PSD operator from a factor matches the Gram route") {
  CounterRng rng(17);
  const RMatrix f = random_ginibre(3, 6, rng).real();
  const auto a = PsdOperator<double>::from_factor(f);
  const auto b = PsdOperator<double>::from_matrix(f.transpose() * f);
  CHECK(a.rank() == 3);
  CHECK(b.rank() == 3);
  CHECK((a.pinv() - b.pinv()).norm() < 1e-10 * b.pinv().norm());
  CHECK(a.kernel_basis().size() == 3);
  const RVector in_range = f.transpose() * RVector::Ones(3);
  CHECK(a.kernel_violation(in_range) < 1e-12 * in_range.norm());
  for (const auto& k : a.kernel_basis()) CHECK(a.kernel_violation(k) == doctest::Approx(1.0));
}

TEST_CASE("K superoperator inverts and matches the Lyapunov oracle") {
  CounterRng rng(19);
  for (int d = 2; d <= 5; ++d) {
    const CMatrix rho = random_density(d, rng, 0.2);
    const CMatrix phi = project_traceless(HermitianMatrix(random_hermitian(d, rng))).entries();
    for (const auto& f : {MonotoneFunction::sld(), MonotoneFunction::rld(), MonotoneFunction::bogoliubov()}) {
      const SuperOperatorKf k(rho, f);
      CHECK((k.apply(k.apply_inverse(phi)) - phi).norm() < 1e-10 * phi.norm());
    }
    const SuperOperatorKf ks(rho, MonotoneFunction::sld());
    CHECK((ks.apply_inverse(phi) - oracle::sld_kron(rho, phi)).norm() < 1e-9 * phi.norm());
    const SuperOperatorKf kr(rho, MonotoneFunction::rld());
    CHECK((kr.apply_inverse(phi) - rho.inverse() * phi).norm() < 1e-9 * phi.norm());
    CHECK((ks.apply(phi) - 0.5 * (rho * phi + phi * rho)).norm() < 1e-12);
  }
}

TEST_CASE("Bogoliubov multiplier is the logarithmic mean") {
  const auto f = MonotoneFunction::bogoliubov();
  CHECK(f.kernel_coefficient(0.3, 0.3) == doctest::Approx(0.3));
  CHECK(f.kernel_coefficient(0.5, 0.2) == doctest::Approx((0.5 - 0.2) / std::log(0.5 / 0.2)).epsilon(1e-13));
  CHECK(f(1.0 + 1e-10) == doctest::Approx(1.0));
  CHECK(f.symmetric());
  CHECK(MonotoneFunction::sld().symmetric());
  CHECK_FALSE(MonotoneFunction::rld().symmetric());
}

TEST_CASE("custom monotone functions are grid checked") {
  const auto sq = MonotoneFunction::custom("sqrt", [](double x) { return std::sqrt(x); });
  CHECK(sq.symmetric());
  CHECK(sq.kernel_coefficient(0.25, 0.04) == doctest::Approx(0.1));
  CHECK_THROWS_AS(MonotoneFunction::custom("dec", [](double x) { return 1.0 / x; }), Error);
  CHECK_THROWS_AS(MonotoneFunction::custom("neg", [](double x) { return x - 1.0; }), Error);
}

TEST_CASE("singular states are rejected by the superoperator") {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  try {
    SuperOperatorKf k(rho, MonotoneFunction::sld());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularState);
  }
}
