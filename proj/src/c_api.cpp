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

#include "urlab/urlab.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "urlab/report.hpp"
#include "urlab/uncertainty.hpp"

using namespace urlab;

struct urlab_state {
  QuantumState v;
};
struct urlab_observable {
  Observable v;
};
struct urlab_povm {
  Povm v;
};
struct urlab_channel {
  KrausChannel v;
};
struct urlab_instrument {
  CpInstrument v;
};
struct urlab_config {
  ScenarioConfig v;
};
struct urlab_report {
  RunReport v;
};

namespace {

thread_local std::string g_last_error;

urlab_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidDimension: return URLAB_ERR_INVALID_DIMENSION;
    case ErrorCode::InvalidOperand: return URLAB_ERR_INVALID_OPERAND;
    case ErrorCode::SingularState: return URLAB_ERR_SINGULAR_STATE;
    case ErrorCode::SingularModel: return URLAB_ERR_SINGULAR_MODEL;
    case ErrorCode::NoUnbiasedEstimator: return URLAB_ERR_NO_UNBIASED_ESTIMATOR;
    case ErrorCode::Config: return URLAB_ERR_CONFIG;
    case ErrorCode::Usage: return URLAB_ERR_USAGE;
    case ErrorCode::Io: return URLAB_ERR_IO;
  }
  return URLAB_ERR_INTERNAL;
}

template <typename F>
urlab_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return URLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return URLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return URLAB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidOperand, std::string("null argument: ") + what);
}

CMatrix read_matrix(const double* data, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidDimension, "matrix dimensions must be positive");
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const std::size_t k = 2 * (static_cast<std::size_t>(i) * cols + j);
      m(i, j) = Complex(data[k], data[k + 1]);
    }
  return m;
}

std::vector<CMatrix> read_matrices(const double* data, int n, int rows, int cols) {
  if (n < 1) throw Error(ErrorCode::InvalidOperand, "need at least one matrix");
  std::vector<CMatrix> out;
  const std::size_t stride = 2 * static_cast<std::size_t>(rows) * cols;
  for (int k = 0; k < n; ++k) out.push_back(read_matrix(data + k * stride, rows, cols));
  return out;
}

std::vector<std::string> index_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void fill(const ErrorResult& r, urlab_error_result* out) {
  out->infinite = r.infinite;
  out->value = r.value;
  out->quad_form = r.quad_form;
  out->variance = r.variance;
  out->kernel_violation = r.kernel_violation;
}

void fill(const UncertaintyReport& r, urlab_uncertainty* out) {
  out->error_disturbance = r.relation == Relation::ErrorDisturbance;
  fill(r.eps_a, &out->eps_a);
  fill(r.eps_or_eta_b, &out->eps_or_eta_b);
  out->r_term = r.r_term;
  out->commutator_term = r.commutator_term;
  out->lhs_infinite = r.lhs_infinite;
  out->lhs = r.lhs;
  out->rhs = r.rhs;
  out->gap = r.gap;
  out->domination_a = r.domination_a;
  out->domination_b = r.domination_b;
  out->holds = r.holds;
}

ReportFormat parse_format(const char* f) {
  need(f, "format");
  if (std::strcmp(f, "csv") == 0) return ReportFormat::Csv;
  if (std::strcmp(f, "json") == 0) return ReportFormat::Json;
  throw Error(ErrorCode::Usage, std::string("unknown report format '") + f + "'");
}

}  // namespace

extern "C" {

const char* urlab_version(void) { return kVersion; }

const char* urlab_last_error(void) { return g_last_error.c_str(); }

const char* urlab_status_string(urlab_status s) {
  switch (s) {
    case URLAB_OK: return "ok";
    case URLAB_ERR_INVALID_DIMENSION: return "invalid-dimension";
    case URLAB_ERR_INVALID_OPERAND: return "invalid-operand";
    case URLAB_ERR_SINGULAR_STATE: return "singular-state";
    case URLAB_ERR_SINGULAR_MODEL: return "singular-model";
    case URLAB_ERR_NO_UNBIASED_ESTIMATOR: return "no-unbiased-estimator";
    case URLAB_ERR_CONFIG: return "config";
    case URLAB_ERR_USAGE: return "usage";
    case URLAB_ERR_IO: return "io";
    case URLAB_ERR_NULL_ARGUMENT: return "null-argument";
    case URLAB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

#define URLAB_REQUIRE_OUT(p)                       \
  do {                                             \
    if (!(p)) {                                    \
      g_last_error = "null output pointer";        \
      return URLAB_ERR_NULL_ARGUMENT;              \
    }                                              \
  } while (0)

urlab_status urlab_state_create(const double* rho, int dim, urlab_state** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(rho, "rho");
    *out = new urlab_state{QuantumState::from_density(read_matrix(rho, dim, dim))};
  });
}

urlab_status urlab_state_maximally_mixed(int dim, urlab_state** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] { *out = new urlab_state{QuantumState::maximally_mixed(dim)}; });
}

void urlab_state_destroy(urlab_state* s) { delete s; }

urlab_status urlab_observable_create(const double* a, int dim, urlab_observable** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(a, "a");
    *out = new urlab_observable{Observable(read_matrix(a, dim, dim))};
  });
}

void urlab_observable_destroy(urlab_observable* a) { delete a; }

urlab_status urlab_povm_create(const double* effects, int n, int dim, urlab_povm** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(effects, "effects");
    *out = new urlab_povm{Povm::discrete(index_labels(n), read_matrices(effects, n, dim, dim))};
  });
}

urlab_status urlab_povm_from_observable(const urlab_observable* a, urlab_povm** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(a, "observable");
    *out = new urlab_povm{pvm_of_observable(a->v)};
  });
}

urlab_status urlab_povm_size(const urlab_povm* m, int* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(m, "povm");
    *out = static_cast<int>(m->v.size());
  });
}

void urlab_povm_destroy(urlab_povm* m) { delete m; }

urlab_status urlab_channel_create(const double* kraus, int n, int out_dim, int in_dim, urlab_channel** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(kraus, "kraus");
    *out = new urlab_channel{KrausChannel(read_matrices(kraus, n, out_dim, in_dim))};
  });
}

urlab_status urlab_channel_depolarizing(double p, urlab_channel** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] { *out = new urlab_channel{KrausChannel::depolarizing(p)}; });
}

void urlab_channel_destroy(urlab_channel* e) { delete e; }

urlab_status urlab_instrument_create(const double* kraus, const int* counts, int outcomes, int out_dim, int in_dim,
                                     urlab_instrument** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(kraus, "kraus");
    need(counts, "counts");
    if (outcomes < 1) throw Error(ErrorCode::InvalidOperand, "instrument needs at least one outcome");
    std::vector<std::vector<CMatrix>> sets;
    const std::size_t stride = 2 * static_cast<std::size_t>(out_dim) * in_dim;
    const double* p = kraus;
    for (int x = 0; x < outcomes; ++x) {
      sets.push_back(read_matrices(p, counts[x], out_dim, in_dim));
      p += stride * static_cast<std::size_t>(counts[x]);
    }
    *out = new urlab_instrument{CpInstrument(index_labels(outcomes), std::move(sets))};
  });
}

urlab_status urlab_instrument_lueders(const urlab_povm* m, urlab_instrument** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(m, "povm");
    *out = new urlab_instrument{CpInstrument::lueders(m->v)};
  });
}

void urlab_instrument_destroy(urlab_instrument* ins) { delete ins; }

urlab_status urlab_sld_fisher(const urlab_state* s, double* out_matrix) {
  URLAB_REQUIRE_OUT(out_matrix);
  return guard([&] {
    need(s, "state");
    const RMatrix j = quantum_fisher(s->v, MonotoneFunction::sld()).real_operator().matrix();
    for (Eigen::Index i = 0; i < j.rows(); ++i)
      for (Eigen::Index k = 0; k < j.cols(); ++k) out_matrix[i * j.cols() + k] = j(i, k);
  });
}

urlab_status urlab_measurement_error(const urlab_state* s, const urlab_observable* a, const urlab_povm* m,
                                     urlab_error_result* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(s, "state");
    need(a, "observable");
    need(m, "povm");
    fill(measurement_error(s->v, a->v, m->v), out);
  });
}

urlab_status urlab_disturbance(const urlab_state* s, const urlab_observable* a, const urlab_channel* e,
                               urlab_error_result* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(s, "state");
    need(a, "observable");
    need(e, "channel");
    fill(disturbance(s->v, a->v, e->v), out);
  });
}

urlab_status urlab_error_error(const urlab_state* s, const urlab_observable* a, const urlab_observable* b,
                               const urlab_povm* m, urlab_uncertainty* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(s, "state");
    need(a, "observable A");
    need(b, "observable B");
    need(m, "povm");
    fill(error_error_report(s->v, a->v, b->v, m->v), out);
  });
}

urlab_status urlab_error_disturbance(const urlab_state* s, const urlab_observable* a, const urlab_observable* b,
                                     const urlab_instrument* ins, urlab_uncertainty* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(s, "state");
    need(a, "observable A");
    need(b, "observable B");
    need(ins, "instrument");
    fill(error_disturbance_report(s->v, a->v, b->v, ins->v), out);
  });
}

urlab_status urlab_config_create(const char* scenario, urlab_config** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(scenario, "scenario");
    const auto names = urlab::scenario_names();
    if (std::find(names.begin(), names.end(), scenario) == names.end())
      throw urlab::Error(urlab::ErrorCode::Usage, std::string("unknown scenario '") + scenario + "'");
    auto* c = new urlab_config{};
    c->v.name = scenario;
    *out = c;
  });
}

urlab_status urlab_config_from_json(const char* text, urlab_config** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(text, "text");
    *out = new urlab_config{scenario_config_from_json(text)};
  });
}

urlab_status urlab_config_set_dim(urlab_config* c, int dim) {
  return guard([&] {
    need(c, "config");
    if (dim < 2) throw Error(ErrorCode::Config, "dim must be at least 2");
    c->v.dim = dim;
  });
}

urlab_status urlab_config_set_seed(urlab_config* c, uint64_t seed) {
  return guard([&] {
    need(c, "config");
    c->v.seed = seed;
  });
}

urlab_status urlab_config_set_param(urlab_config* c, const char* key, double value) {
  return guard([&] {
    need(c, "config");
    need(key, "key");
    c->v.params[key] = value;
  });
}

urlab_status urlab_config_set_tolerance(urlab_config* c, const char* key, double value) {
  return guard([&] {
    need(c, "config");
    need(key, "key");
    c->v.tolerances[key] = value;
  });
}

urlab_status urlab_config_set_cutoffs(urlab_config* c, const int* cutoffs, int n) {
  return guard([&] {
    need(c, "config");
    if (n > 0) need(cutoffs, "cutoffs");
    c->v.cutoffs.assign(cutoffs, cutoffs + std::max(n, 0));
  });
}

void urlab_config_destroy(urlab_config* c) { delete c; }

int urlab_scenario_count(void) { return static_cast<int>(scenario_names().size()); }

const char* urlab_scenario_name(int i) {
  static const std::vector<std::string> names = scenario_names();
  if (i < 0 || i >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<std::size_t>(i)].c_str();
}

urlab_status urlab_run_scenario(const urlab_config* c, urlab_report** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(c, "config");
    *out = new urlab_report{run_scenario(c->v)};
  });
}

urlab_status urlab_run_verify(const char* suite, int trials, uint64_t seed, int dim_max, urlab_report** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(suite, "suite");
    *out = new urlab_report{run_verify(suite, trials, seed, dim_max)};
  });
}

urlab_status urlab_report_all_pass(const urlab_report* r, int* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(r, "report");
    *out = r->v.all_pass();
  });
}

urlab_status urlab_report_row_count(const urlab_report* r, int* out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(r, "report");
    *out = static_cast<int>(r->v.rows.size());
  });
}

urlab_status urlab_report_emit(const urlab_report* r, const char* format, const char* path) {
  return guard([&] {
    need(r, "report");
    need(path, "path");
    emit_report(r->v, parse_format(format), path);
  });
}

urlab_status urlab_report_render(const urlab_report* r, const char* format, char** out) {
  URLAB_REQUIRE_OUT(out);
  return guard([&] {
    need(r, "report");
    const std::string text = parse_format(format) == ReportFormat::Csv ? report_to_csv(r->v) : report_to_json(r->v);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void urlab_string_free(char* s) { delete[] s; }

void urlab_report_destroy(urlab_report* r) { delete r; }

}  // extern "C"
