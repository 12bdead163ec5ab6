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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dlfcn.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "urlab/urlab.h"

namespace {

// Interleaved (re, im) row-major qubit matrices.
std::vector<double> qubit(double a00, double a01_re, double a01_im, double a11) {
  return {a00, 0.0, a01_re, a01_im, a01_re, -a01_im, a11, 0.0};
}

const std::vector<double> kZ = qubit(1, 0, 0, -1);
const std::vector<double> kX = qubit(0, 1, 0, 0);

}  // namespace

TEST_CASE("c api: version and status strings") {
  CHECK(std::string(urlab_version()) == "0.1.0");
  CHECK(std::string(urlab_status_string(URLAB_OK)).size() > 0);
  CHECK(urlab_scenario_count() == 4);
  CHECK(urlab_scenario_name(-1) == nullptr);
  CHECK(urlab_scenario_name(urlab_scenario_count()) == nullptr);
}

TEST_CASE("c api: measurement error and disturbance") {
  urlab_state* s = nullptr;
  REQUIRE(urlab_state_maximally_mixed(2, &s) == URLAB_OK);
  urlab_observable *z = nullptr, *x = nullptr;
  REQUIRE(urlab_observable_create(kZ.data(), 2, &z) == URLAB_OK);
  REQUIRE(urlab_observable_create(kX.data(), 2, &x) == URLAB_OK);

  // Unsharp Z with efficiency 0.8.
  std::vector<double> effects = qubit(0.9, 0, 0, 0.1);
  const auto minus = qubit(0.1, 0, 0, 0.9);
  effects.insert(effects.end(), minus.begin(), minus.end());
  urlab_povm* m = nullptr;
  REQUIRE(urlab_povm_create(effects.data(), 2, 2, &m) == URLAB_OK);
  int n = 0;
  CHECK(urlab_povm_size(m, &n) == URLAB_OK);
  CHECK(n == 2);

  urlab_error_result e{};
  REQUIRE(urlab_measurement_error(s, z, m, &e) == URLAB_OK);
  CHECK_FALSE(e.infinite);
  CHECK(std::abs(e.value - 0.5625) < 1e-10);
  REQUIRE(urlab_measurement_error(s, x, m, &e) == URLAB_OK);
  CHECK(e.infinite);

  urlab_channel* dep = nullptr;
  REQUIRE(urlab_channel_depolarizing(0.5, &dep) == URLAB_OK);
  REQUIRE(urlab_disturbance(s, z, dep, &e) == URLAB_OK);
  CHECK(std::abs(e.value - 3.0) < 1e-10);

  urlab_instrument* ins = nullptr;
  REQUIRE(urlab_instrument_lueders(m, &ins) == URLAB_OK);
  urlab_uncertainty u{};
  REQUIRE(urlab_error_disturbance(s, z, x, ins, &u) == URLAB_OK);
  CHECK(u.error_disturbance == 1);
  CHECK(u.holds);
  CHECK(u.gap >= -1e-10);
  urlab_povm* pz = nullptr;
  REQUIRE(urlab_povm_from_observable(z, &pz) == URLAB_OK);
  REQUIRE(urlab_error_error(s, z, x, m, &u) == URLAB_OK);
  CHECK(u.error_disturbance == 0);
  CHECK(u.holds);

  double j[9] = {};
  REQUIRE(urlab_sld_fisher(s, j) == URLAB_OK);
  // SLD metric at the maximally mixed qubit is 2 I in Gell-Mann coordinates.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(std::abs(j[3 * a + b] - (a == b ? 2.0 : 0.0)) < 1e-12);

  urlab_povm_destroy(pz);
  urlab_instrument_destroy(ins);
  urlab_channel_destroy(dep);
  urlab_povm_destroy(m);
  urlab_observable_destroy(x);
  urlab_observable_destroy(z);
  urlab_state_destroy(s);
}

TEST_CASE("c api: error codes") {
  urlab_state* s = nullptr;
  CHECK(urlab_state_maximally_mixed(0, &s) == URLAB_ERR_INVALID_DIMENSION);
  CHECK(s == nullptr);
  CHECK(std::strlen(urlab_last_error()) > 0);
  CHECK(urlab_state_maximally_mixed(2, nullptr) == URLAB_ERR_NULL_ARGUMENT);
  const auto pure = qubit(1, 0, 0, 0);
  CHECK(urlab_state_create(pure.data(), 2, &s) == URLAB_ERR_SINGULAR_STATE);
  const auto bad_trace = qubit(1, 0, 0, 1);
  CHECK(urlab_state_create(bad_trace.data(), 2, &s) == URLAB_ERR_INVALID_OPERAND);
  urlab_channel* ch = nullptr;
  const auto half = qubit(0.5, 0, 0, 0.5);
  CHECK(urlab_channel_create(half.data(), 1, 2, 2, &ch) == URLAB_ERR_INVALID_OPERAND);
  urlab_config* c = nullptr;
  CHECK(urlab_config_create("nope", &c) == URLAB_ERR_USAGE);
  CHECK(urlab_config_from_json("{\"name\": \"qubit-unsharp\", \"bogus\": 1}", &c) == URLAB_ERR_CONFIG);
  // Destroying null handles is a no-op.
  urlab_state_destroy(nullptr);
  urlab_report_destroy(nullptr);
}

TEST_CASE("c api: scenario run and render") {
  urlab_config* c = nullptr;
  REQUIRE(urlab_config_create("qubit-instrument", &c) == URLAB_OK);
  CHECK(urlab_config_set_seed(c, 5) == URLAB_OK);
  CHECK(urlab_config_set_param(c, "trials", 20) == URLAB_OK);
  urlab_report* r = nullptr;
  REQUIRE(urlab_run_scenario(c, &r) == URLAB_OK);
  int pass = 0, rows = 0;
  CHECK(urlab_report_all_pass(r, &pass) == URLAB_OK);
  CHECK(pass == 1);
  CHECK(urlab_report_row_count(r, &rows) == URLAB_OK);
  CHECK(rows > 0);
  char* text = nullptr;
  REQUIRE(urlab_report_render(r, "csv", &text) == URLAB_OK);
  CHECK(std::string(text).rfind("scenario,quantity,value,bound,gap,status", 0) == 0);
  urlab_string_free(text);
  CHECK(urlab_report_render(r, "xml", &text) == URLAB_ERR_USAGE);
  urlab_report_destroy(r);

  CHECK(urlab_config_set_param(c, "p", 2.0) == URLAB_OK);
  CHECK(urlab_run_scenario(c, &r) == URLAB_ERR_CONFIG);
  urlab_config_destroy(c);

  REQUIRE(urlab_run_verify("classical", 3, 11, 3, &r) == URLAB_OK);
  CHECK(urlab_report_all_pass(r, &pass) == URLAB_OK);
  CHECK(pass == 1);
  urlab_report_destroy(r);
}

TEST_CASE("c api: symbols resolve through dlopen") {
  void* lib = dlopen(URLAB_SHARED_LIBRARY_PATH, RTLD_NOW | RTLD_LOCAL);
  REQUIRE_MESSAGE(lib != nullptr, dlerror());
  using VersionFn = const char* (*)();
  auto version = reinterpret_cast<VersionFn>(dlsym(lib, "urlab_version"));
  REQUIRE(version != nullptr);
  CHECK(std::string(version()) == std::string(urlab_version()));
  CHECK(dlsym(lib, "urlab_no_such_symbol") == nullptr);
  dlclose(lib);
}
