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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "urlab/properties.hpp"
#include "urlab/random.hpp"
#include "urlab/report.hpp"

namespace urlab {

namespace {


CMatrix pauli(char which) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (which) {
    case 'x': m(0, 1) = m(1, 0) = 1.0; break;
    case 'y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

CMatrix id2() { return CMatrix::Identity(2, 2); }

Povm unsharp_z(double eta) {
  return Povm::discrete({"+1", "-1"}, {0.5 * (id2() + eta * pauli('z')), 0.5 * (id2() - eta * pauli('z'))});
}

QuantumState bloch(double x, double y, double z) {
  return QuantumState::from_density(0.5 * (id2() + x * pauli('x') + y * pauli('y') + z * pauli('z')));
}

// Parameter handling: unknown keys and out-of-range values are config errors.
class Params {
 public:
  Params(const ScenarioConfig& cfg, std::map<std::string, double> defaults,
         std::map<std::string, double> tol_defaults)
      : values_(std::move(defaults)), tols_(std::move(tol_defaults)) {
    for (const auto& [k, v] : cfg.params) {
      if (!values_.count(k)) throw Error(ErrorCode::Config, "unknown parameter '" + k + "' for " + cfg.name);
      if (!std::isfinite(v)) throw Error(ErrorCode::Config, "parameter '" + k + "' must be finite");
      values_[k] = v;
    }
    for (const auto& [k, v] : cfg.tolerances) {
      if (!tols_.count(k)) throw Error(ErrorCode::Config, "unknown tolerance '" + k + "' for " + cfg.name);
      if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::Config, "tolerance '" + k + "' must be >= 0");
      tols_[k] = v;
    }
  }

  double get(const std::string& k) const { return values_.at(k); }
  double tol(const std::string& k) const { return tols_.at(k); }

  /// Checks lo < v <= hi (open_lo) or lo <= v <= hi.
  double range(const std::string& k, double lo, double hi, bool open_lo, bool open_hi) const {
    const double v = get(k);
    const bool ok = (open_lo ? v > lo : v >= lo) && (open_hi ? v < hi : v <= hi);
    if (!ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "parameter '%s' = %g outside %c%g, %g%c", k.c_str(), v, open_lo ? '(' : '[',
                    lo, hi, open_hi ? ')' : ']');
      throw Error(ErrorCode::Config, buf);
    }
    return v;
  }

  int count(const std::string& k, int lo, int hi) const {
    const double v = range(k, lo, hi, false, false);
    if (v != std::floor(v)) throw Error(ErrorCode::Config, "parameter '" + k + "' must be an integer");
    return static_cast<int>(v);
  }

 private:
  std::map<std::string, double> values_;
  std::map<std::string, double> tols_;
};

void require_dim(const ScenarioConfig& cfg, int expected) {
  if (cfg.dim != 0 && cfg.dim != expected)
    throw Error(ErrorCode::Config, cfg.name + " runs at dimension " + std::to_string(expected));
}

void reject_cutoffs(const ScenarioConfig& cfg) {
  if (!cfg.cutoffs.empty()) throw Error(ErrorCode::Config, "cutoffs apply only to the oscillator scenario");
}

void add_infinite_ok(RunReport& r, const std::string& q, CheckKind kind, double bound) {
  r.rows.push_back({r.scenario, q, true, 0.0, bound, 0.0, RowStatus::Infinite, kind});
}

// value(x) - value(y) >= 0, where an infinite x always passes.
void add_domination(RunReport& r, const std::string& q, const ErrorResult& x, const ErrorResult& y, double tol) {
  if (x.infinite) return add_infinite_ok(r, q, CheckKind::AtLeast, 0.0);
  if (y.infinite) {
    r.rows.push_back({r.scenario, q, false, 0.0, 0.0, 0.0, RowStatus::Fail, CheckKind::AtLeast});
    return;
  }
  r.add_at_least(q, x.value - y.value, 0.0, tol * std::max(1.0, std::abs(y.value)));
}

void add_uncertainty_gap(RunReport& r, const std::string& q, const UncertaintyReport& u, double tol) {
  if (u.lhs_infinite) return add_infinite_ok(r, q, CheckKind::AtLeast, 0.0);
  r.add_at_least(q, u.gap, 0.0, tol * std::max(1.0, u.rhs));
}

void add_tally(RunReport& r, const std::string& q, const PropertyTally& t) {
  r.add_equals(q, t.passed, t.trials, 0.0);
}

// qubit-unsharp ----------------------------------------------------------------

RunReport qubit_unsharp(const ScenarioConfig& cfg) {
  require_dim(cfg, 2);
  reject_cutoffs(cfg);
  const Params p(cfg, {{"eta", 0.8}, {"r", 0.6}, {"r_xy", 0.5}, {"s", 0.7}, {"trials", 200}, {"samples", 100000}},
                 {{"closed_form", 1e-10}, {"inequality", 1e-8}, {"pvm_zero", 1e-8}, {"mc_sigmas", 3.0}});
  const double eta = p.range("eta", 0.0, 1.0, true, false);
  const double r = p.range("r", 0.0, 1.0, false, true);
  const double rxy = p.range("r_xy", 0.0, 1.0, false, true);
  const double sc = p.range("s", 0.0, 1.0, true, false);
  const int trials = p.count("trials", 1, 100000);
  const int samples = p.count("samples", 1000, 100000000);
  const double cf = p.tol("closed_form"), ineq = p.tol("inequality");

  RunReport rep;
  rep.scenario = cfg.name;
  rep.metadata.dims = {2};
  const auto mixed = QuantumState::maximally_mixed(2);
  const Observable sx(pauli('x')), sy(pauli('y')), sz(pauli('z'));

  const double eps_want = 1.0 / (eta * eta) - 1.0;
  rep.add_error_equals("epsilon_sz", measurement_error(mixed, sz, unsharp_z(eta)), eps_want,
                       cf * std::max(1.0, eps_want));
  rep.add_error_at_most("pvm_zero_error", measurement_error(mixed, sz, pvm_of_observable(sz)), p.tol("pvm_zero"));
  rep.add_expect_infinite("epsilon_sx_pvm_z", measurement_error(mixed, sx, pvm_of_observable(sz)));

  const auto bz = bloch(0, 0, r);
  const auto js = quantum_fisher(bz, MonotoneFunction::sld());
  const double form_want = 2.0 / (1.0 - r * r);
  RVector ez = RVector::Zero(3), ex = RVector::Zero(3);
  ez(2) = ex(0) = 1.0;
  rep.add_equals("sld_form_bloch_z", js.quad_form(ez), form_want, cf * form_want);
  rep.add_equals("sld_form_bloch_x", js.quad_form(ex), 2.0, cf * 2.0);

  const auto cr = quantum_cr_check(mixed, unsharp_z(eta));
  rep.add_at_least("cramer_rao_sld_gap", cr.sld_gap_min_eig, 0.0, ineq * cr.sld_norm);
  rep.add_at_least("cramer_rao_rld_gap", cr.rld_gap_min_eig, 0.0, ineq * cr.rld_norm);

  std::vector<CMatrix> eff;
  std::vector<std::string> labels;
  for (int i : {1, -1})
    for (int k : {1, -1}) {
      eff.push_back(0.25 * (id2() + sc * (i * pauli('x') + k * pauli('y')) / std::sqrt(2.0)));
      labels.push_back(std::string(i > 0 ? "+" : "-") + (k > 0 ? "+" : "-"));
    }
  const auto ee = error_error_report(bloch(0, 0, rxy), sx, sy, Povm::discrete(labels, eff));
  add_uncertainty_gap(rep, "error_error_xy_gap", ee, ineq);
  rep.add_equals("error_error_xy_commutator", ee.commutator_term, rxy * rxy, cf);

  PropertyTally sweep;
  const CounterRng base = CounterRng(cfg.seed).split(1);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(t));
    bool ok = false;
    try {
      const Observable a(random_hermitian(2, rng)), b(random_hermitian(2, rng));
      const auto u = error_error_report(mixed, a, b, random_povm(2, 4 + t % 3, rng));
      ok = u.holds;
    } catch (const Error&) {
    }
    sweep.passed += ok;
    ++sweep.trials;
  }
  add_tally(rep, "error_error_sweep_passed", sweep);

  // Monte Carlo with the efficient locally unbiased estimator of <sigma_z>.
  const auto model = model_from_povm(mixed, unsharp_z(eta));
  const RVector f = locally_unbiased_estimator(model, grad_expectation(mixed, sz).coords(), expectation(mixed, sz));
  const auto mc = monte_carlo_variance(model, f, static_cast<std::size_t>(samples), cfg.seed);
  rep.add_equals("mc_variance_sz", mc.var, 1.0 / (eta * eta), p.tol("mc_sigmas") * mc.var_stderr);
  rep.add_equals("mc_mean_sz", mc.mean, 0.0, std::max(4.0, p.tol("mc_sigmas")) * mc.mean_stderr);
  return rep;
}

// qubit-instrument ---------------------------------------------------------------

RunReport qubit_instrument(const ScenarioConfig& cfg) {
  require_dim(cfg, 2);
  reject_cutoffs(cfg);
  const Params p(cfg, {{"p", 0.5}, {"eta", 0.8}, {"x", 0.3}, {"trials", 200}},
                 {{"closed_form", 1e-10}, {"inequality", 1e-8}});
  const double pd = p.range("p", 0.0, 1.0, false, true);
  const double eta = p.range("eta", 0.0, 1.0, true, false);
  const double bx = p.range("x", -1.0, 1.0, true, true);
  const int trials = p.count("trials", 1, 100000);
  const double cf = p.tol("closed_form"), ineq = p.tol("inequality");

  RunReport rep;
  rep.scenario = cfg.name;
  rep.metadata.dims = {2};
  const auto mixed = QuantumState::maximally_mixed(2);
  const Observable sx(pauli('x')), sz(pauli('z'));

  const double eta_want = 1.0 / ((1 - pd) * (1 - pd)) - 1.0;
  rep.add_error_equals("eta_depolarizing", disturbance(mixed, sz, KrausChannel::depolarizing(pd)), eta_want,
                       cf * std::max(1.0, eta_want));
  rep.add_error_equals("eta_identity", disturbance(mixed, sz, KrausChannel::identity(2)), 0.0, cf);
  rep.add_expect_infinite("eta_sx_dephasing", disturbance(mixed, sx, KrausChannel::full_dephasing(2)));

  const auto [e_l, h_l] = instrument_error_disturbance(mixed, sz, sx, CpInstrument::lueders(pvm_of_observable(sz)));
  rep.add_error_equals("epsilon_sz_lueders", e_l, 0.0, cf);
  rep.add_expect_infinite("eta_sx_lueders", h_l);

  const auto unsharp = CpInstrument::lueders(unsharp_z(eta));
  const double eps_want = 1.0 / (eta * eta) - 1.0;
  rep.add_error_equals("epsilon_sz_unsharp_instrument", instrument_error_disturbance(mixed, sz, sx, unsharp).first,
                       eps_want, cf * std::max(1.0, eps_want));

  const auto ed = error_disturbance_report(bloch(bx, 0, 0), sz, sx, unsharp);
  add_domination(rep, "ed_domination_error", ed.eps_a, *ed.joint_eps_a, ineq);
  add_domination(rep, "ed_domination_disturbance", ed.eps_or_eta_b, *ed.joint_eps_b, ineq);
  add_uncertainty_gap(rep, "ed_gap", ed, ineq);

  PropertyTally sweep;
  const CounterRng base = CounterRng(cfg.seed).split(2);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(t));
    bool ok = false;
    try {
      const auto s = QuantumState::from_density(random_density(2, rng));
      const auto ins = random_instrument(2, 2 + t % 3, 1 + t % 2, rng);
      const Observable a(random_hermitian(2, rng)), b(random_hermitian(2, rng));
      ok = error_disturbance_report(s, a, b, ins).holds;
    } catch (const Error&) {
    }
    sweep.passed += ok;
    ++sweep.trials;
  }
  add_tally(rep, "ed_sweep_passed", sweep);
  return rep;
}

// qutrit-random --------------------------------------------------------------------

RunReport qutrit_random(const ScenarioConfig& cfg) {
  reject_cutoffs(cfg);
  const Params p(cfg, {{"trials", 50}}, {});
  const int trials = p.count("trials", 1, 100000);
  const int d = cfg.dim == 0 ? 3 : cfg.dim;
  if (d < 2 || d > 8) throw Error(ErrorCode::Config, "qutrit-random dimension must lie in [2, 8]");
  RunReport rep;
  rep.scenario = cfg.name;
  rep.metadata.dims = {d};
  for (const auto& prop : property_registry())
    add_tally(rep, prop.suite + "." + prop.name, run_property(prop, trials, cfg.seed, d, d));
  return rep;
}

// oscillator ---------------------------------------------------------------------------

std::string cutoff_tag(int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "[n%03d]", n);
  return buf;
}

RunReport oscillator(const ScenarioConfig& cfg) {
  const Params p(cfg, {{"mean_photon", 1.0}, {"gamma", 0.2}},
                 {{"oscillator_eps", 1e-6}, {"drift", 0.01}, {"closed_form", 1e-8}});
  const double nbar = p.range("mean_photon", 0.0, 10.0, true, false);
  const double gamma = p.range("gamma", 0.0, 5.0, true, false);
  std::vector<int> cutoffs = cfg.cutoffs.empty() ? std::vector<int>{8, 16, 24, 32} : cfg.cutoffs;
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  for (int n : cutoffs)
    if (n < 4 || n > 64) throw Error(ErrorCode::Config, "cutoffs must lie in [4, 64]");
  if (cfg.dim != 0) throw Error(ErrorCode::Config, "oscillator takes cutoffs, not dim");

  RunReport rep;
  rep.scenario = cfg.name;
  rep.metadata.dims = cutoffs;
  std::vector<double> eps_q, eta_q;
  for (int n : cutoffs) {
    CMatrix rho = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) rho(k, k) = std::pow(nbar / (nbar + 1.0), k) / (nbar + 1.0);
    rho /= rho.trace().real();
    const auto s = QuantumState::from_density(rho);
    CMatrix a = CMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Observable q(CMatrix((a + a.adjoint()) / std::sqrt(2.0)));
    const Observable pm(CMatrix(Complex(0, -1) * (a - a.adjoint()) / std::sqrt(2.0)));
    RMatrix c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = std::exp(-0.5 * gamma * (i - j) * (i - j));
    const KrausChannel deph = KrausChannel::schur_dephasing(c);
    const Povm homodyne = pvm_of_observable(q);

    const std::string tag = cutoff_tag(n);
    const auto e = measurement_error(s, q, homodyne);
    rep.add_error_at_most("epsilon_q_homodyne" + tag, e, p.tol("oscillator_eps"));
    rep.add_expect_infinite("epsilon_p_homodyne_q" + tag, measurement_error(s, pm, homodyne));
    const auto h = disturbance(s, q, deph);
    const double h_want = std::expm1(gamma) * variance(s, q);
    rep.add_error_equals("eta_q_dephasing" + tag, h, h_want, p.tol("closed_form") * std::max(1.0, h_want));
    eps_q.push_back(e.infinite ? HUGE_VAL : e.value);
    eta_q.push_back(h.infinite ? HUGE_VAL : h.value);
  }
  if (cutoffs.size() >= 2) {
    const std::size_t k = cutoffs.size() - 1;
    const std::string tag = "[n" + std::to_string(cutoffs[k - 1]) + "_n" + std::to_string(cutoffs[k]) + "]";
    rep.add_at_most("eta_q_relative_drift" + tag, std::abs(eta_q[k - 1] - eta_q[k]) / std::abs(eta_q[k]),
                    p.tol("drift"));
    rep.add_at_most("epsilon_q_abs_drift" + tag, std::abs(eps_q[k - 1] - eps_q[k]), p.tol("oscillator_eps"));
  }
  return rep;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"qubit-unsharp", "qubit-instrument", "qutrit-random", "oscillator"}; }

RunReport run_scenario(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  if (cfg.name == "qubit-unsharp") {
    rep = qubit_unsharp(cfg);
  } else if (cfg.name == "qubit-instrument") {
    rep = qubit_instrument(cfg);
  } else if (cfg.name == "qutrit-random") {
    rep = qutrit_random(cfg);
  } else if (cfg.name == "oscillator") {
    rep = oscillator(cfg);
  } else {
    throw Error(ErrorCode::Usage, "unknown scenario '" + cfg.name + "'");
  }
  rep.metadata.seed = cfg.seed;
  rep.sort_rows();
  rep.metadata.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport run_verify(const std::string& suite, int trials, std::uint64_t seed, int dim_max) {
  static const std::set<std::string> suites{"all", "core", "classical", "quantum", "uncertainty"};
  if (!suites.count(suite)) throw Error(ErrorCode::Usage, "unknown verify suite '" + suite + "'");
  if (trials < 1) throw Error(ErrorCode::Usage, "trials must be at least 1");
  if (dim_max < 2 || dim_max > 8) throw Error(ErrorCode::Usage, "dim-max must lie in [2, 8]");
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.scenario = "verify-" + suite;
  rep.metadata.seed = seed;
  for (int d = 2; d <= dim_max; ++d) rep.metadata.dims.push_back(d);
  for (const auto& prop : property_registry()) {
    if (suite != "all" && prop.suite != suite) continue;
    add_tally(rep, prop.suite + "." + prop.name, run_property(prop, trials, seed, 2, dim_max));
  }
  rep.sort_rows();
  rep.metadata.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace urlab
