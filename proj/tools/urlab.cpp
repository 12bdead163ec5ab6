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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "urlab/urlab.h"

namespace {

enum Exit { kPass = 0, kRowsFailed = 1, kUsage = 2, kConfig = 3, kIo = 4, kOther = 5 };

int exit_for(urlab_status s) {
  switch (s) {
    case URLAB_OK: return kPass;
    case URLAB_ERR_USAGE: return kUsage;
    case URLAB_ERR_CONFIG: return kConfig;
    case URLAB_ERR_IO: return kIo;
    default: return kOther;
  }
}

struct Failure {
  urlab_status status;
};

void check(urlab_status s) {
  if (s != URLAB_OK) throw Failure{s};
}

// Owns a C handle.
template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Destroy(p);
  }
};

using Config = Handle<urlab_config, urlab_config_destroy>;
using Report = Handle<urlab_report, urlab_report_destroy>;

std::pair<std::string, double> parse_kv(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("expected key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != val.size() || val.empty()) throw CLI::ValidationError("value for '" + key + "' is not a number");
  return {key, v};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "urlab: cannot read config '" << path << "'\n";
    throw Failure{URLAB_ERR_IO};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int finish(const Report& rep, const std::string& format, const std::string& out) {
  check(urlab_report_emit(rep.p, format.c_str(), out.c_str()));
  int pass = 0, rows = 0;
  check(urlab_report_all_pass(rep.p, &pass));
  check(urlab_report_row_count(rep.p, &rows));
  std::cerr << "urlab: " << rows << " rows, " << (pass ? "all pass" : "FAILURES present") << "\n";
  return pass ? kPass : kRowsFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimation-theoretic measurement error and disturbance toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(urlab_version()));

  std::string format = "csv", out = "-";
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "Output path, '-' for stdout");
  };

  // scenario
  auto* sc = app.add_subcommand("scenario", "Run a named scenario");
  std::string sc_name, sc_config;
  int sc_dim = 0;
  long long sc_seed = -1;
  std::vector<std::string> sc_params, sc_tols;
  std::vector<int> sc_cutoffs;
  sc->add_option("name", sc_name, "Scenario name (see 'urlab list')");
  sc->add_option("--config", sc_config, "JSON scenario config; flags override its fields");
  sc->add_option("--dim", sc_dim, "Hilbert-space dimension")->check(CLI::Range(2, 64));
  sc->add_option("--seed", sc_seed, "Random seed")->check(CLI::NonNegativeNumber);
  sc->add_option("--param", sc_params, "Scenario parameter key=value (repeatable)");
  sc->add_option("--tol", sc_tols, "Tolerance override key=value (repeatable)");
  sc->add_option("--cutoffs", sc_cutoffs, "Fock cutoffs (oscillator)")->delimiter(',');
  add_output(sc);

  // verify
  auto* vf = app.add_subcommand("verify", "Run randomized property suites");
  std::string suite = "all";
  int trials = 20, dim_max = 4;
  long long vf_seed = 0;
  vf->add_option("--suite", suite, "all | core | classical | quantum | uncertainty");
  vf->add_option("--trials", trials, "Trials per property")->check(CLI::PositiveNumber);
  vf->add_option("--seed", vf_seed, "Random seed")->check(CLI::NonNegativeNumber);
  vf->add_option("--dim-max", dim_max, "Largest dimension")->check(CLI::Range(2, 8));
  add_output(vf);

  // sweep oscillator
  auto* sw = app.add_subcommand("sweep", "Convergence sweeps");
  std::string sw_target;
  std::vector<int> sw_cutoffs{8, 16, 24, 32};
  double mean_photon = 1.0, gamma = 0.2;
  sw->add_option("target", sw_target, "Sweep target")->required()->check(CLI::IsMember({"oscillator"}));
  sw->add_option("--cutoffs", sw_cutoffs, "Fock cutoffs")->delimiter(',');
  sw->add_option("--mean-photon", mean_photon, "Thermal mean photon number");
  sw->add_option("--gamma", gamma, "Phase-diffusion dephasing strength");
  add_output(sw);

  auto* ls = app.add_subcommand("list", "List scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (ls->parsed()) {
      for (int i = 0; i < urlab_scenario_count(); ++i) std::cout << urlab_scenario_name(i) << "\n";
      return kPass;
    }
    Config cfg;
    Report rep;
    if (sc->parsed()) {
      if (!sc_config.empty()) {
        check(urlab_config_from_json(read_file(sc_config).c_str(), &cfg.p));
        if (!sc_name.empty()) {
          std::cerr << "urlab: give either a scenario name or --config, not both\n";
          return kUsage;
        }
      } else {
        if (sc_name.empty()) {
          std::cerr << "urlab: scenario name required\n";
          return kUsage;
        }
        check(urlab_config_create(sc_name.c_str(), &cfg.p));
      }
      if (sc_dim) check(urlab_config_set_dim(cfg.p, sc_dim));
      if (sc_seed >= 0) check(urlab_config_set_seed(cfg.p, static_cast<uint64_t>(sc_seed)));
      for (const auto& kv : sc_params) {
        const auto [k, v] = parse_kv(kv);
        check(urlab_config_set_param(cfg.p, k.c_str(), v));
      }
      for (const auto& kv : sc_tols) {
        const auto [k, v] = parse_kv(kv);
        check(urlab_config_set_tolerance(cfg.p, k.c_str(), v));
      }
      if (!sc_cutoffs.empty())
        check(urlab_config_set_cutoffs(cfg.p, sc_cutoffs.data(), static_cast<int>(sc_cutoffs.size())));
      check(urlab_run_scenario(cfg.p, &rep.p));
      return finish(rep, format, out);
    }
    if (vf->parsed()) {
      check(urlab_run_verify(suite.c_str(), trials, static_cast<uint64_t>(vf_seed), dim_max, &rep.p));
      return finish(rep, format, out);
    }
    if (sw->parsed()) {
      check(urlab_config_create("oscillator", &cfg.p));
      check(urlab_config_set_param(cfg.p, "mean_photon", mean_photon));
      check(urlab_config_set_param(cfg.p, "gamma", gamma));
      check(urlab_config_set_cutoffs(cfg.p, sw_cutoffs.data(), static_cast<int>(sw_cutoffs.size())));
      check(urlab_run_scenario(cfg.p, &rep.p));
      return finish(rep, format, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "urlab: " << e.what() << "\n";
    return kUsage;
  } catch (const Failure& f) {
    const char* msg = urlab_last_error();
    std::cerr << "urlab: " << urlab_status_string(f.status) << " error" << (msg && *msg ? ": " : "")
              << (msg ? msg : "") << "\n";
    return exit_for(f.status);
  }
  return kUsage;
}
