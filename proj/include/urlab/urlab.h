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

#ifndef URLAB_URLAB_H_
#define URLAB_URLAB_H_

/*
 * C interface to urlab. All objects are opaque handles created by
 * urlab_*_create functions and released by the matching _destroy. Every
 * fallible call returns a urlab_status; on failure urlab_last_error()
 * describes the problem (thread-local, valid until the next call).
 *
 * Matrices are passed as interleaved (re, im) doubles in row-major order,
 * so a d x d matrix takes 2*d*d doubles.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define URLAB_API __declspec(dllexport)
#else
#define URLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum urlab_status {
  URLAB_OK = 0,
  URLAB_ERR_INVALID_DIMENSION = 1,
  URLAB_ERR_INVALID_OPERAND = 2,
  URLAB_ERR_SINGULAR_STATE = 3,
  URLAB_ERR_SINGULAR_MODEL = 4,
  URLAB_ERR_NO_UNBIASED_ESTIMATOR = 5,
  URLAB_ERR_CONFIG = 6,
  URLAB_ERR_USAGE = 7,
  URLAB_ERR_IO = 8,
  URLAB_ERR_NULL_ARGUMENT = 9,
  URLAB_ERR_INTERNAL = 10
} urlab_status;

typedef struct urlab_state urlab_state;
typedef struct urlab_observable urlab_observable;
typedef struct urlab_povm urlab_povm;
typedef struct urlab_channel urlab_channel;
typedef struct urlab_instrument urlab_instrument;
typedef struct urlab_config urlab_config;
typedef struct urlab_report urlab_report;

typedef struct urlab_error_result {
  int infinite;
  double value;
  double quad_form;
  double variance;
  double kernel_violation;
} urlab_error_result;

typedef struct urlab_uncertainty {
  int error_disturbance; /* 0: error-error relation */
  urlab_error_result eps_a;
  urlab_error_result eps_or_eta_b;
  double r_term;
  double commutator_term;
  int lhs_infinite;
  double lhs;
  double rhs;
  double gap;
  int domination_a;
  int domination_b;
  int holds;
} urlab_uncertainty;

URLAB_API const char* urlab_version(void);
URLAB_API const char* urlab_last_error(void);
URLAB_API const char* urlab_status_string(urlab_status s);

/* States, observables, measurements, channels. */
URLAB_API urlab_status urlab_state_create(const double* rho, int dim, urlab_state** out);
URLAB_API urlab_status urlab_state_maximally_mixed(int dim, urlab_state** out);
URLAB_API void urlab_state_destroy(urlab_state* s);

URLAB_API urlab_status urlab_observable_create(const double* a, int dim, urlab_observable** out);
URLAB_API void urlab_observable_destroy(urlab_observable* a);

/* `effects` holds n consecutive d x d matrices. */
URLAB_API urlab_status urlab_povm_create(const double* effects, int n, int dim, urlab_povm** out);
URLAB_API urlab_status urlab_povm_from_observable(const urlab_observable* a, urlab_povm** out);
URLAB_API urlab_status urlab_povm_size(const urlab_povm* m, int* out);
URLAB_API void urlab_povm_destroy(urlab_povm* m);

/* `kraus` holds n consecutive out_dim x in_dim matrices. */
URLAB_API urlab_status urlab_channel_create(const double* kraus, int n, int out_dim, int in_dim,
                                            urlab_channel** out);
URLAB_API urlab_status urlab_channel_depolarizing(double p, urlab_channel** out);
URLAB_API void urlab_channel_destroy(urlab_channel* e);

/* Outcome x has counts[x] Kraus operators, stored consecutively in `kraus`. */
URLAB_API urlab_status urlab_instrument_create(const double* kraus, const int* counts, int outcomes, int out_dim,
                                               int in_dim, urlab_instrument** out);
URLAB_API urlab_status urlab_instrument_lueders(const urlab_povm* m, urlab_instrument** out);
URLAB_API void urlab_instrument_destroy(urlab_instrument* ins);

/* Estimation quantities. */
URLAB_API urlab_status urlab_sld_fisher(const urlab_state* s, double* out_matrix);
URLAB_API urlab_status urlab_measurement_error(const urlab_state* s, const urlab_observable* a,
                                               const urlab_povm* m, urlab_error_result* out);
URLAB_API urlab_status urlab_disturbance(const urlab_state* s, const urlab_observable* a, const urlab_channel* e,
                                         urlab_error_result* out);
URLAB_API urlab_status urlab_error_error(const urlab_state* s, const urlab_observable* a,
                                         const urlab_observable* b, const urlab_povm* m, urlab_uncertainty* out);
URLAB_API urlab_status urlab_error_disturbance(const urlab_state* s, const urlab_observable* a,
                                               const urlab_observable* b, const urlab_instrument* ins,
                                               urlab_uncertainty* out);

/* Scenario configuration. */
URLAB_API urlab_status urlab_config_create(const char* scenario, urlab_config** out);
URLAB_API urlab_status urlab_config_from_json(const char* text, urlab_config** out);
URLAB_API urlab_status urlab_config_set_dim(urlab_config* c, int dim);
URLAB_API urlab_status urlab_config_set_seed(urlab_config* c, uint64_t seed);
URLAB_API urlab_status urlab_config_set_param(urlab_config* c, const char* key, double value);
URLAB_API urlab_status urlab_config_set_tolerance(urlab_config* c, const char* key, double value);
URLAB_API urlab_status urlab_config_set_cutoffs(urlab_config* c, const int* cutoffs, int n);
URLAB_API void urlab_config_destroy(urlab_config* c);

/* Runs and reports. */
URLAB_API int urlab_scenario_count(void);
URLAB_API const char* urlab_scenario_name(int i);
URLAB_API urlab_status urlab_run_scenario(const urlab_config* c, urlab_report** out);
URLAB_API urlab_status urlab_run_verify(const char* suite, int trials, uint64_t seed, int dim_max,
                                        urlab_report** out);
URLAB_API urlab_status urlab_report_all_pass(const urlab_report* r, int* out);
URLAB_API urlab_status urlab_report_row_count(const urlab_report* r, int* out);
/* format is "csv" or "json"; path "-" writes to stdout. */
URLAB_API urlab_status urlab_report_emit(const urlab_report* r, const char* format, const char* path);
/* Rendered text, released with urlab_string_free. */
URLAB_API urlab_status urlab_report_render(const urlab_report* r, const char* format, char** out);
URLAB_API void urlab_string_free(char* s);
URLAB_API void urlab_report_destroy(urlab_report* r);

#ifdef __cplusplus
}
#endif

#endif /* URLAB_URLAB_H_ */
