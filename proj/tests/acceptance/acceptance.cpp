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


// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Each line reports the worst observed residual.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "urlab/classical_fisher.hpp"
#include "urlab/properties.hpp"
#include "urlab/quantum_fisher.hpp"
#include "urlab/random.hpp"
#include "urlab/report.hpp"
#include "urlab/uncertainty.hpp"

using namespace urlab;

namespace {

constexpr std::uint64_t kSeed = 20260915;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0: no per-criterion budget
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int draw_int(CounterRng& rng, int lo, int hi) { return lo + static_cast<int>(rng.uniform() * (hi - lo + 1)); }
double rel(double v) { return std::max(1.0, std::abs(v)); }
QuantumState random_state(CounterRng& rng, int d) { return QuantumState::from_density(random_density(d, rng)); }
CMatrix pauli_z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

Povm unsharp_z(double eta) {
  const CMatrix i = CMatrix::Identity(2, 2);
  return Povm::discrete({"+1", "-1"}, {0.5 * (i + eta * pauli_z()), 0.5 * (i - eta * pauli_z())});
}

Outcome pvm_zero_error() {
  CounterRng rng = CounterRng(kSeed).split(1);
  double worst = 0.0;
  bool finite = true;
  for (int t = 0; t < 100; ++t) {
    const int d = draw_int(rng, 2, 6);
    const auto s = random_state(rng, d);
    const Observable a(random_hermitian(d, rng));
    const auto e = measurement_error(s, a, pvm_of_observable(a));
    finite = finite && !e.infinite;
    worst = std::max(worst, std::abs(e.value));
  }
  return {finite && worst <= 1e-8, fmt("max |eps(A; P^A)| = %.3g over 100 states, d in 2..6", worst)};
}

Outcome closed_forms() {
  const auto mixed = QuantumState::maximally_mixed(2);
  const Observable z(pauli_z());
  const double eps = measurement_error(mixed, z, unsharp_z(0.8)).value;
  const double eta = disturbance(mixed, z, KrausChannel::depolarizing(0.5)).value;
  const double r = 0.6;
  const auto s = QuantumState::from_density(0.5 * (CMatrix::Identity(2, 2) + r * pauli_z()));
  const RVector unit_z = tangent_coords(pauli_z() / std::sqrt(2.0));
  const double form = quantum_fisher(s, MonotoneFunction::sld()).quad_form(unit_z);
  const double e1 = std::abs(eps - 0.5625), e2 = std::abs(eta - 3.0), e3 = std::abs(form - 3.125);
  return {std::max({e1, e2, e3}) <= 1e-10,
          fmt("eps = %.15g, eta = %.15g, sld form = %.15g (max dev %.2g)", eps, eta, form, std::max({e1, e2, e3}))};
}

Outcome quantum_cr() {
  CounterRng rng = CounterRng(kSeed).split(3);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    const int d = draw_int(rng, 2, 5);
    const auto s = random_state(rng, d);
    const auto rep = quantum_cr_check(s, random_povm(d, draw_int(rng, 2, d * d + 2), rng));
    worst = std::min({worst, rep.sld_gap_min_eig / rel(rep.sld_norm), rep.rld_gap_min_eig / rel(rep.rld_norm)});
  }
  return {worst >= -1e-8, fmt("min eig(J^f - J^M) / norm = %.3g over 200 pairs, d <= 5", worst)};
}

Outcome correlations() {
  CounterRng rng = CounterRng(kSeed).split(4);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int d = draw_int(rng, 2, 5);
    const auto s = random_state(rng, d);
    const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
    const RVector ga = grad_expectation(s, a).coords(), gb = grad_expectation(s, b).coords();
    const auto js = quantum_fisher(s, MonotoneFunction::sld());
    const auto jr = quantum_fisher(s, MonotoneFunction::rld());
    const double cs = sym_correlation(s, a, b);
    const Complex c = correlation(s, a, b);
    worst = std::max(worst, std::abs(js.pinv_pairing(gb, ga).real() - cs) / rel(cs));
    worst = std::max(worst, std::abs(jr.pinv_pairing(gb, ga) - c) / rel(std::abs(c)));
    // scalar consequence on phi = grad <A>
    const double var = variance(s, a);
    worst = std::max(worst, std::abs(js.pinv_pairing(ga, ga).real() - var) / rel(var));
    worst = std::max(worst, std::abs(jr.pinv_pairing(ga, ga).real() - var) / rel(var));
  }
  return {worst <= 1e-8, fmt("max relative deviation %.3g over 200 triples", worst)};
}

Outcome monotonicity() {
  CounterRng rng = CounterRng(kSeed).split(5);
  double classical = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    const int d = draw_int(rng, 2, 4);
    const int n = draw_int(rng, 2, d * d + 2);
    const auto s = random_state(rng, d);
    const auto model = model_from_povm(s, random_povm(d, n, rng));
    const auto k = random_stochastic_kernel(draw_int(rng, 1, n + 2), static_cast<int>(model.size()), rng);
    const auto rep = monotonicity_check(model, k);
    classical = std::min(classical, rep.diff_min_eig / rel(fisher_operator(model).norm()));
  }
  double quantum = std::numeric_limits<double>::infinity();
  const MonotoneFunction fs[] = {MonotoneFunction::sld(), MonotoneFunction::rld(), MonotoneFunction::bogoliubov()};
  for (const auto& f : fs) {
    for (int t = 0; t < 100; ++t) {
      const int d = draw_int(rng, 2, 4);
      const auto s = random_state(rng, d);
      const auto ch = random_channel(d, d, draw_int(rng, 1, 3), rng);
      const auto j = quantum_fisher(s, f);
      const auto jp = quantum_fisher(s, f, ch);
      quantum = std::min(quantum, min_eigenvalue(CMatrix(j.complex_matrix() - jp.complex_matrix())) / rel(j.norm()));
    }
  }
  return {classical >= -1e-8 && quantum >= -1e-8,
          fmt("classical min eig / norm %.3g (200 kernels), quantum %.3g (3 x 100 channels)", classical, quantum)};
}

Outcome uncertainty_relations() {
  CounterRng rng = CounterRng(kSeed).split(6);
  double ee = std::numeric_limits<double>::infinity(), ed = ee;
  int ee_finite = 0, ed_finite = 0, dom_fail = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = draw_int(rng, 2, 4);
    const auto s = random_state(rng, d);
    const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
    const auto r = error_error_report(s, a, b, random_povm(d, d * d + draw_int(rng, 0, 3), rng));
    if (!r.lhs_infinite) {
      ++ee_finite;
      ee = std::min(ee, r.gap / rel(r.rhs));
    }
  }
  for (int t = 0; t < 200; ++t) {
    const int d = draw_int(rng, 2, 4);
    const auto s = random_state(rng, d);
    const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
    const int outcomes = draw_int(rng, d * d, d * d + 2), kraus = draw_int(rng, 1, 2);
    const auto ins = random_instrument(d, outcomes, kraus, rng);
    const auto r = error_disturbance_report(s, a, b, ins);
    if (!r.lhs_infinite) {
      ++ed_finite;
      ed = std::min(ed, r.gap / rel(r.rhs));
    }
    if (!r.domination_a || !r.domination_b) ++dom_fail;
  }
  return {ee >= -1e-8 && ed >= -1e-8 && dom_fail == 0,
          fmt("min gap / max(1, rhs): error-error %.3g (%d/200 finite), error-disturbance %.3g (%d/200 finite); "
              "domination failures %d",
              ee, ee_finite, ed, ed_finite, dom_fail)};
}

Outcome monte_carlo() {
  const auto mixed = QuantumState::maximally_mixed(2);
  const auto model = model_from_povm(mixed, unsharp_z(0.8));
  const RVector a = grad_expectation(mixed, Observable(pauli_z())).coords();
  const RVector f = locally_unbiased_estimator(model, a, 0.0);
  const double exact = estimator_variance(model, f);
  const auto mc = monte_carlo_variance(model, f, 100000, kSeed);
  const double z = (mc.var - 1.5625) / mc.var_stderr;
  return {std::abs(exact - 1.5625) <= 1e-10 && std::abs(z) <= 3.0,
          fmt("exact var %.15g, sample var %.6g +- %.3g (z = %.2f), n = 1e5", exact, mc.var, mc.var_stderr, z)};
}

Outcome linear_algebra() {
  CounterRng rng = CounterRng(kSeed).split(8);
  double penrose = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int rows = draw_int(rng, 2, 40), cols = draw_int(rng, 2, 40);
    const int rank = draw_int(rng, 1, std::min(rows, cols));
    const CMatrix left = random_ginibre(rows, rank, rng);
    const CMatrix a = left * random_ginibre(rank, cols, rng);
    const CMatrix x = mp_inverse(a).inverse;
    const CMatrix ax = a * x, xa = x * a;
    // Residuals in units of ||S||, per condition.
    penrose = std::max({penrose, (a * x * a - a).norm() / a.norm(), (x * a * x - x).norm() / a.norm(),
                        (ax.adjoint() - ax).norm() / a.norm(), (xa.adjoint() - xa).norm() / a.norm()});
  }
  const auto tally = run_property(find_property("core.schur_equivalence"), 200, kSeed, 2, 5);
  return {penrose <= 1e-9 && tally.passed == tally.trials,
          fmt("max Penrose residual / norm %.3g over 500 matrices (2..40 square or not, all ranks); Schur agreement %d/%d", penrose, tally.passed,
              tally.trials)};
}

Outcome oscillator() {
  ScenarioConfig cfg;
  cfg.name = "oscillator";
  cfg.cutoffs = {24, 32};
  cfg.params["mean_photon"] = 1.0;
  const auto r = run_scenario(cfg);
  double eps = 0.0, drift = -1.0;
  bool eps_finite = true;
  for (const auto& row : r.rows) {
    if (row.quantity.rfind("epsilon_q_homodyne[", 0) == 0) {
      eps_finite = eps_finite && !row.value_infinite;
      eps = std::max(eps, std::abs(row.value));
    }
    if (row.quantity.rfind("eta_q_relative_drift[", 0) == 0) drift = row.value;
  }
  return {eps_finite && eps <= 1e-6 && drift >= 0.0 && drift <= 0.01 && r.all_pass(),
          fmt("max eps(q) %.3g at cutoffs 24, 32; eta(q) relative drift %.3g; scenario rows %s", eps, drift,
              r.all_pass() ? "pass" : "FAIL")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "PVM zero error", 30.0, pvm_zero_error},
      {2, "closed-form qubit values", 0.0, closed_forms},
      {3, "quantum Cramer-Rao", 60.0, quantum_cr},
      {4, "correlation identities", 0.0, correlations},
      {5, "monotonicity", 0.0, monotonicity},
      {6, "error-error and error-disturbance relations", 0.0, uncertainty_relations},
      {7, "Monte Carlo saturation", 10.0, monte_carlo},
      {8, "pseudoinverse and Schur complement", 0.0, linear_algebra},
      {9, "oscillator truncation", 0.0, oscillator},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_budget;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %s: %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                in_budget ? "" : ", over budget");
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d/%zu criteria pass, %.2f s total (budget 300 s)\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 && total < 300.0 ? 0 : 1;
}
