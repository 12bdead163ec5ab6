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

#include "urlab/properties.hpp"

#include <algorithm>
#include <cmath>

#include "urlab/random.hpp"
#include "urlab/uncertainty.hpp"

namespace urlab {

namespace {

using Fn = std::function<bool(CounterRng&, int)>;

int draw_int(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

double rel(double v) { return std::max(1.0, std::abs(v)); }

QuantumState random_state(CounterRng& rng, int d) { return QuantumState::from_density(random_density(d, rng)); }

TangentVector random_tangent(CounterRng& rng, int d) {
  return project_traceless(HermitianMatrix(random_hermitian(d, rng)));
}

const std::vector<MonotoneFunction>& standard_functions() {
  static const std::vector<MonotoneFunction> fs{MonotoneFunction::sld(), MonotoneFunction::rld(),
                                                MonotoneFunction::bogoliubov()};
  return fs;
}

// core ---------------------------------------------------------------------

bool penrose(CounterRng& rng, int d) {
  const int rows = draw_int(rng, 1, d + 2), cols = draw_int(rng, 1, d + 2);
  const int rank = draw_int(rng, 1, std::min(rows, cols));
  const CMatrix left = random_ginibre(rows, rank, rng);
  const CMatrix a = left * random_ginibre(rank, cols, rng);
  const CMatrix x = mp_inverse(a).inverse;
  const double n = a.norm();
  return (a * x * a - a).norm() <= 1e-9 * n && (x * a * x - x).norm() <= 1e-9 * std::max(x.norm(), 1e-300) &&
         ((a * x).adjoint() - a * x).norm() <= 1e-9 && ((x * a).adjoint() - x * a).norm() <= 1e-9;
}

bool schur_equivalence(CounterRng& rng, int d) {
  const int n1 = draw_int(rng, 1, d), n2 = draw_int(rng, 1, d);
  const int r = draw_int(rng, 1, n1 + n2);
  const CMatrix g = random_ginibre(n1 + n2, r, rng);
  CMatrix m = g * g.adjoint();
  bool indefinite = rng.uniform() < 0.5;
  if (indefinite) {
    // Shift to the midpoint of the spectrum so M is guaranteed indefinite.
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (hi - lo < 1e-3 * hi) indefinite = false;
    else m -= 0.5 * (lo + hi) * CMatrix::Identity(n1 + n2, n1 + n2);
  }
  const auto rep =
      schur_positivity_report(m.topLeftCorner(n1, n1), m.topRightCorner(n1, n2), m.bottomRightCorner(n2, n2));
  return rep.is_psd == rep.cond2 && rep.is_psd == rep.cond3 && rep.is_psd == !indefinite;
}

bool kf_roundtrip(CounterRng& rng, int d) {
  const CMatrix rho = random_density(d, rng);
  const CMatrix x = random_ginibre(d, d, rng);
  for (const auto& f : standard_functions()) {
    const SuperOperatorKf k(rho, f);
    if ((k.apply(k.apply_inverse(x)) - x).norm() > 1e-10 * x.norm()) return false;
  }
  return true;
}

bool tangent_roundtrip(CounterRng& rng, int d) {
  const TangentVector v = random_tangent(rng, d);
  const auto basis = tangent_basis(d);
  for (std::size_t a = 0; a < basis.elements.size(); ++a)
    if (std::abs(hs_inner(basis.elements[a].entries(), v.entries()).real() -
                 v.coords()(static_cast<Eigen::Index>(a))) > 1e-12 * rel(v.entries().norm()))
      return false;
  return (from_tangent_coords(v.coords(), d) - v.entries()).norm() <= 1e-12 * rel(v.entries().norm());
}

// classical ------------------------------------------------------------------

bool classical_monotonicity(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto model = model_from_povm(s, random_povm(d, draw_int(rng, 2, d * d + 1), rng));
  const auto k = random_stochastic_kernel(draw_int(rng, 1, 6), static_cast<int>(model.size()), rng);
  return monotonicity_check(model, k).holds;
}

bool locally_unbiased_efficient(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto model = model_from_povm(s, random_povm(d, d * d + 1, rng));
  const RVector a = random_tangent(rng, d).coords();
  const double target = rng.normal();
  const RVector f = locally_unbiased_estimator(model, a, target);
  const auto j = fisher_operator(model);
  const double bound = j.pinv_form(a, a);
  // sum_x p f cancels at the scale of the estimator's spread, not the target
  const double scale = std::max(rel(target), std::sqrt(bound));
  return std::abs(estimator_mean(model, f) - target) <= 1e-9 * scale &&
         (estimator_gradient(model, f) - a).norm() <= 1e-8 * rel(a.norm()) &&
         std::abs(estimator_variance(model, f) - bound) <= 1e-8 * rel(bound);
}

bool markov_identity(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto model = model_from_povm(s, random_povm(d, draw_int(rng, 2, 6), rng));
  const auto same = markov_pushforward(model, StochasticKernel::identity(static_cast<int>(model.size())));
  const auto merged = markov_pushforward(model, StochasticKernel::merge_all(static_cast<int>(model.size())));
  const auto j = fisher_operator(model);
  return (fisher_operator(same).matrix() - j.matrix()).norm() <= 1e-10 * rel(j.norm()) &&
         fisher_operator(merged).norm() <= 1e-10 * rel(j.norm());
}

// quantum --------------------------------------------------------------------

bool log_derivative_invariants(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto phi = random_tangent(rng, d);
  for (const auto& f : standard_functions()) {
    const auto l = log_derivative(s, phi, f);
    const SuperOperatorKf k(s.density(), f);
    if ((k.apply(l.matrix) - phi.entries()).norm() > 1e-9 * phi.entries().norm()) return false;
    if (std::abs((s.density() * l.matrix).trace()) > 1e-9) return false;
    if (f.symmetric() && !is_hermitian(l.matrix, 1e-10)) return false;
  }
  return true;
}

bool quantum_cramer_rao(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  return quantum_cr_check(s, random_povm(d, draw_int(rng, 2, d * d + 2), rng)).holds;
}

bool correlation_sld(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
  const auto j = quantum_fisher(s, MonotoneFunction::sld());
  const double want = sym_correlation(s, a, b);
  const double got = j.pinv_pairing(grad_expectation(s, b).coords(), grad_expectation(s, a).coords()).real();
  return std::abs(got - want) <= 1e-8 * rel(want);
}

bool correlation_rld(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
  const auto j = quantum_fisher(s, MonotoneFunction::rld());
  const Complex want = correlation(s, a, b);
  const Complex got = j.pinv_pairing(grad_expectation(s, b).coords(), grad_expectation(s, a).coords());
  return std::abs(got - want) <= 1e-8 * rel(std::abs(want));
}

bool scalar_identity(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto phi = random_tangent(rng, d);
  const CMatrix& p = phi.entries();
  const double want = (s.density() * p * p).trace().real() - std::pow((s.density() * p).trace().real(), 2);
  const double vs = quantum_fisher(s, MonotoneFunction::sld()).pinv_pairing(phi.coords(), phi.coords()).real();
  const double vr = quantum_fisher(s, MonotoneFunction::rld()).pinv_pairing(phi.coords(), phi.coords()).real();
  return std::abs(vs - want) <= 1e-8 * rel(want) && std::abs(vr - want) <= 1e-8 * rel(want);
}

Fn quantum_monotonicity(MonotoneFunction f) {
  return [f](CounterRng& rng, int d) {
    const auto s = random_state(rng, d);
    const auto ch = random_channel(d, d, draw_int(rng, 1, 3), rng);
    const auto j = quantum_fisher(s, f);
    const auto jp = quantum_fisher(s, f, ch);
    return min_eigenvalue(CMatrix(j.complex_matrix() - jp.complex_matrix())) >= -1e-8 * j.norm();
  };
}

bool metric_monotone(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const int dout = draw_int(rng, 2, d + 1);
  // d * nk >= dout keeps the output state full rank.
  const int nk = std::max((d + dout - 1) / dout, (dout + d - 1) / d) + draw_int(rng, 1, 2);
  const auto ch = random_channel(d, dout, nk, rng);
  const auto out = apply_channel(ch, s);
  const CMatrix v = random_tangent(rng, d).entries();
  const CMatrix ev = apply_channel(ch, v);
  for (const auto& f : standard_functions()) {
    const double before = monotone_metric_value(s, f, v, v).real();
    const double after = monotone_metric_value(out, f, ev, ev).real();
    if (before < after - 1e-8 * rel(before)) return false;
  }
  return true;
}

bool sld_optimal_attains(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto phi = random_tangent(rng, d);
  const double q = quantum_fisher(s, MonotoneFunction::sld()).quad_form(phi.coords());
  const auto jc = fisher_operator(model_from_povm(s, sld_optimal_pvm(s, phi)));
  return std::abs(jc.form(phi.coords(), phi.coords()) - q) <= 1e-8 * rel(q);
}

// uncertainty ------------------------------------------------------------------

bool pvm_zero_error(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const Observable a(random_hermitian(d, rng));
  const auto e = measurement_error(s, a, pvm_of_observable(a));
  return !e.infinite && std::abs(e.value) <= 1e-8;
}

bool nonnegativity(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const Observable a(random_hermitian(d, rng));
  const auto e = measurement_error(s, a, random_povm(d, draw_int(rng, 2, d * d + 2), rng));
  const auto h = disturbance(s, a, random_channel(d, d, draw_int(rng, 1, 3), rng));
  return (e.infinite || e.value >= -1e-8 * rel(e.quad_form)) && (h.infinite || h.value >= -1e-8 * rel(h.quad_form));
}

bool measurement_bound_order(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const auto jm = fisher_operator(model_from_povm(s, random_povm(d, draw_int(rng, 2, d * d + 2), rng)));
  const RVector phi = jm.matrix() * random_tangent(rng, d).coords();
  if (phi.norm() == 0.0) return true;
  const double vm = jm.pinv_form(phi, phi);
  const double vs = quantum_fisher(s, MonotoneFunction::sld()).pinv_pairing(phi, phi).real();
  const double vr = quantum_fisher(s, MonotoneFunction::rld()).pinv_pairing(phi, phi).real();
  return vm >= vs - 1e-8 * rel(vm) && vm >= vr - 1e-8 * rel(vm);
}

bool minimum_attainment(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const RVector phi = random_tangent(rng, d).coords();
  const auto js = quantum_fisher(s, MonotoneFunction::sld());
  const auto psi = TangentVector::from_coords(js.real_operator().pinv() * phi, d);
  const auto jm = fisher_operator(model_from_povm(s, sld_optimal_pvm(s, psi)));
  if (jm.kernel_violation(phi) > kernel_threshold(jm.norm(), (jm.pinv() * phi).norm(), phi.norm())) return false;
  const double vm = jm.pinv_form(phi, phi);
  const double vs = js.pinv_pairing(phi, phi).real();
  const double vr = quantum_fisher(s, MonotoneFunction::rld()).pinv_pairing(phi, phi).real();
  return std::abs(vm - vs) <= 1e-8 * rel(vs) && std::abs(vr - vs) <= 1e-8 * rel(vs);
}

bool joint_marginals(CounterRng& rng, int d) {
  const int outcomes = draw_int(rng, 1, 4), kraus = draw_int(rng, 1, 2);
  const auto ins = random_instrument(d, outcomes, kraus, rng);
  const Povm pvm = pvm_of_observable(Observable(random_hermitian(d, rng)));
  const Povm j = joint_povm(ins, pvm);
  const Povm ind = induced_povm(ins);
  const KrausChannel avg = average_channel(ins);
  for (std::size_t x = 0; x < ins.size(); ++x) {
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t y = 0; y < pvm.size(); ++y) sum += j.effect(x * pvm.size() + y);
    if ((sum - ind.effect(x)).norm() > 1e-10) return false;
  }
  for (std::size_t y = 0; y < pvm.size(); ++y) {
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t x = 0; x < ins.size(); ++x) sum += j.effect(x * pvm.size() + y);
    if ((sum - avg.apply_adjoint(pvm.effect(y))).norm() > 1e-10) return false;
  }
  return std::all_of(j.effects().begin(), j.effects().end(),
                     [](const CMatrix& e) { return min_eigenvalue(e) >= -1e-12; });
}

bool domination(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const int outcomes = draw_int(rng, 2, 4), kraus = draw_int(rng, 1, 2);
  const auto ins = random_instrument(d, outcomes, kraus, rng);
  const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
  const auto r = error_disturbance_report(s, a, b, ins);
  return r.domination_a && r.domination_b;
}

bool error_error_gap(CounterRng& rng, int d) {
  const auto s = rng.uniform() < 0.5 ? QuantumState::maximally_mixed(d) : random_state(rng, d);
  const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
  return error_error_report(s, a, b, random_povm(d, d * d + draw_int(rng, 0, 3), rng)).holds;
}

bool error_disturbance_gap(CounterRng& rng, int d) {
  const auto s = random_state(rng, d);
  const int outcomes = draw_int(rng, 2, d * d), kraus = draw_int(rng, 1, 2);
  const auto ins = random_instrument(d, outcomes, kraus, rng);
  const Observable a(random_hermitian(d, rng)), b(random_hermitian(d, rng));
  return error_disturbance_report(s, a, b, ins).holds;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const std::vector<Property>& property_registry() {
  static const std::vector<Property> reg{
      {"core", "penrose", penrose},
      {"core", "schur_equivalence", schur_equivalence},
      {"core", "kf_roundtrip", kf_roundtrip},
      {"core", "tangent_roundtrip", tangent_roundtrip},
      {"classical", "monotonicity", classical_monotonicity},
      {"classical", "locally_unbiased_efficient", locally_unbiased_efficient},
      {"classical", "markov_identity_and_merge", markov_identity},
      {"quantum", "log_derivative_invariants", log_derivative_invariants},
      {"quantum", "cramer_rao", quantum_cramer_rao},
      {"quantum", "correlation_sld", correlation_sld},
      {"quantum", "correlation_rld", correlation_rld},
      {"quantum", "scalar_identity", scalar_identity},
      {"quantum", "monotonicity_sld", quantum_monotonicity(MonotoneFunction::sld())},
      {"quantum", "monotonicity_rld", quantum_monotonicity(MonotoneFunction::rld())},
      {"quantum", "monotonicity_bogoliubov", quantum_monotonicity(MonotoneFunction::bogoliubov())},
      {"quantum", "metric_monotone", metric_monotone},
      {"quantum", "sld_optimal_attains", sld_optimal_attains},
      {"uncertainty", "pvm_zero_error", pvm_zero_error},
      {"uncertainty", "nonnegativity", nonnegativity},
      {"uncertainty", "measurement_bound_order", measurement_bound_order},
      {"uncertainty", "minimum_attainment", minimum_attainment},
      {"uncertainty", "joint_marginals", joint_marginals},
      {"uncertainty", "domination", domination},
      {"uncertainty", "error_error_gap", error_error_gap},
      {"uncertainty", "error_disturbance_gap", error_disturbance_gap},
  };
  return reg;
}

const Property& find_property(const std::string& qualified_name) {
  for (const auto& p : property_registry())
    if (p.suite + "." + p.name == qualified_name) return p;
  throw Error(ErrorCode::Usage, "unknown property '" + qualified_name + "'");
}

PropertyTally run_property(const Property& p, int trials, std::uint64_t seed, int dim_min, int dim_max) {
  if (dim_min < 2 || dim_max < dim_min) throw Error(ErrorCode::InvalidDimension, "invalid dimension range");
  const CounterRng base = CounterRng(seed).split(fnv1a(p.suite + "." + p.name));
  PropertyTally tally;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(t));
    const int d = dim_min + static_cast<int>(rng.uniform() * (dim_max - dim_min + 1));
    bool ok = false;
    try {
      ok = p.check(rng, d);
    } catch (const Error&) {
      ok = false;
    }
    tally.passed += ok;
    ++tally.trials;
  }
  return tally;
}

}  // namespace urlab
