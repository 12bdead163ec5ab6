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
#include "urlab/classical_fisher.hpp"
#include "urlab/random.hpp"

using namespace urlab;
using oracle::id;
using oracle::pauli_x;
using oracle::pauli_z;

namespace {

Povm unsharp_z(double eta) {
  return Povm::discrete({"+1", "-1"}, {0.5 * (id(2) + eta * pauli_z()), 0.5 * (id(2) - eta * pauli_z())});
}

}  // namespace

TEST_CASE("statistical model validation") {
  RVector p(2);
  p << 0.5, 0.5;
  RMatrix s(2, 1);
  s << 1.0, -1.0;
  CHECK_NOTHROW(StatisticalModel({"a", "b"}, p, s));
  RMatrix bad(2, 1);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(StatisticalModel({"a", "b"}, p, bad), Error);
  RVector q(2);
  q << 0.6, 0.6;
  CHECK_THROWS_AS(StatisticalModel({"a", "b"}, q, s), Error);
  RMatrix dp(2, 1);
  dp << 0.25, -0.25;
  const auto m = StatisticalModel::from_derivatives({"a", "b"}, p, dp);
  CHECK(m.scores()(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("classical Fisher operator matches finite differences") {
  CounterRng rng(23);
  for (int d = 2; d <= 4; ++d) {
    const CMatrix rho = random_density(d, rng, 0.1);
    const Povm m = random_povm(d, d + 2, rng);
    const auto j = fisher_operator(model_from_povm(QuantumState::from_density(rho), m));
    const RMatrix ref = oracle::classical_fisher_fd(rho, m.effects());
    CHECK((j.matrix() - ref).norm() < 1e-7 * ref.norm());
  }
}

TEST_CASE("unsharp qubit Fisher operator is rank one") {
  const double eta = 0.8;
  const auto model = model_from_povm(QuantumState::maximally_mixed(2), unsharp_z(eta));
  const auto j = fisher_operator(model);
  CHECK(j.rank() == 1);
  CHECK(j.matrix()(2, 2) == doctest::Approx(2 * eta * eta).epsilon(1e-13));
  RVector a(3);
  a << 0, 0, std::sqrt(2.0);
  CHECK(j.pinv_form(a, a) == doctest::Approx(1 / (eta * eta)).epsilon(1e-13));
  RVector b(3);
  b << std::sqrt(2.0), 0, 0;
  CHECK(j.kernel_violation(b) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("zero effects are dropped from the model") {
  const Povm m = Povm::discrete({"0", "1", "never"}, {0.5 * (id(2) + pauli_z()), 0.5 * (id(2) - pauli_z()),
                                                      CMatrix::Zero(2, 2)});
  const auto model = model_from_povm(QuantumState::maximally_mixed(2), m);
  CHECK(model.size() == 2);
}

TEST_CASE("Markov pushforward never increases Fisher information") {
  CounterRng rng(29);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 + t % 3;
    const auto s = QuantumState::from_density(random_density(d, rng));
    const auto model = model_from_povm(s, random_povm(d, 2 + t % 5, rng));
    const auto k = random_stochastic_kernel(1 + t % 4, static_cast<int>(model.size()), rng);
    const auto rep = monotonicity_check(model, k);
    CHECK(rep.holds);
  }
  const auto model = model_from_povm(QuantumState::maximally_mixed(2), unsharp_z(0.8));
  const auto merged = markov_pushforward(model, StochasticKernel::merge_all(2));
  CHECK(fisher_operator(merged).norm() < 1e-14);
  const auto same = markov_pushforward(model, StochasticKernel::identity(2));
  CHECK((fisher_operator(same).matrix() - fisher_operator(model).matrix()).norm() < 1e-14);
  // Binary flip q scales the score by (1 - 2q).
  const auto flipped = markov_pushforward(model, StochasticKernel::binary_flip(0.25));
  CHECK(fisher_operator(flipped).matrix()(2, 2) == doctest::Approx(2 * 0.64 * 0.25));
  CHECK_THROWS_AS(StochasticKernel::binary_flip(1.5), Error);
}

TEST_CASE("locally unbiased estimator is unbiased and efficient") {
  CounterRng rng(31);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 3;
    const auto s = QuantumState::from_density(random_density(d, rng));
    const auto model = model_from_povm(s, random_povm(d, d * d + 1, rng));
    const RVector a = tangent_coords(random_hermitian(d, rng));
    const RVector f = locally_unbiased_estimator(model, a, 0.7);
    const auto j = fisher_operator(model);
    CHECK(estimator_mean(model, f) == doctest::Approx(0.7));
    CHECK((estimator_gradient(model, f) - a).norm() < 1e-9 * a.norm());
    CHECK(estimator_variance(model, f) == doctest::Approx(j.pinv_form(a, a)).epsilon(1e-9));
  }
}

TEST_CASE("estimator does not exist for gradients in the kernel") {
  const auto model = model_from_povm(QuantumState::maximally_mixed(2), unsharp_z(0.8));
  RVector a(3);
  a << 1.0, 0.0, 0.0;
  try {
    locally_unbiased_estimator(model, a, 0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoUnbiasedEstimator);
  }
}

TEST_CASE("Monte Carlo variance of the efficient estimator") {
  const double eta = 0.8;
  const auto model = model_from_povm(QuantumState::maximally_mixed(2), unsharp_z(eta));
  RVector a(3);
  a << 0, 0, std::sqrt(2.0);
  const RVector f = locally_unbiased_estimator(model, a, 0.0);
  CHECK(f(0) == doctest::Approx(1 / eta));
  const auto r = monte_carlo_variance(model, f, 100000, 42);
  CHECK(std::abs(r.var - 1 / (eta * eta)) < 3 * r.var_stderr);
  CHECK(std::abs(r.mean) < 4 * r.mean_stderr);
  const auto r2 = monte_carlo_variance(model, f, 100000, 42);
  CHECK(r.var == r2.var);
  CHECK_THROWS_AS(monte_carlo_variance(model, f, 999, 1), Error);
}
