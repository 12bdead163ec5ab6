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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urlab/uncertainty.hpp"

namespace urlab {

inline constexpr const char* kVersion = "0.1.0";

enum class RowStatus { Pass, Fail, Infinite };
/// How value is compared to bound: |value - bound| <= tol, value >= bound - tol
/// or value <= bound + tol.
enum class CheckKind { Equals, AtLeast, AtMost, Infinite };

const char* to_string(RowStatus s);
const char* to_string(CheckKind k);

struct ReportRow {
  std::string scenario;
  std::string quantity;
  bool value_infinite = false;
  double value = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // value - bound
  RowStatus status = RowStatus::Fail;
  CheckKind check = CheckKind::Equals;
};

struct ReportMetadata {
  std::uint64_t seed = 0;
  std::vector<int> dims;
  double wall_time_s = 0.0;
  std::string version = kVersion;
};

struct RunReport {
  std::string scenario;
  std::vector<ReportRow> rows;
  ReportMetadata metadata;

  /// No row has status Fail.
  bool all_pass() const;
  /// Sorts rows by quantity name.
  void sort_rows();

  void add_equals(const std::string& quantity, double value, double expected, double tol);
  void add_at_least(const std::string& quantity, double value, double bound, double tol = 0.0);
  void add_at_most(const std::string& quantity, double value, double bound, double tol = 0.0);
  /// Passes with status Infinite only when r is the +infinity sentinel.
  void add_expect_infinite(const std::string& quantity, const ErrorResult& r);
  /// Finite-value check of an ErrorResult; an infinite value fails.
  void add_error_at_most(const std::string& quantity, const ErrorResult& r, double bound);
  void add_error_equals(const std::string& quantity, const ErrorResult& r, double expected, double tol);
};

struct ScenarioConfig {
  std::string name;
  int dim = 0;  // 0: scenario default
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::vector<int> cutoffs;
  std::map<std::string, double> tolerances;
};

/// Parses a JSON document mirroring ScenarioConfig. Throws Config.
ScenarioConfig scenario_config_from_json(const std::string& text);

/// Scenario names accepted by run_scenario.
std::vector<std::string> scenario_names();

/// Throws Usage for an unknown name, Config for invalid parameters.
RunReport run_scenario(const ScenarioConfig& cfg);

/// Suites: all, core, classical, quantum, uncertainty. One row per property
/// with value = passing trials and bound = trials.
RunReport run_verify(const std::string& suite, int trials, std::uint64_t seed, int dim_max);

enum class ReportFormat { Csv, Json };

std::string report_to_csv(const RunReport& r);
std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// Writes to `path`, or to stdout when path is "-". Throws Io on failure.
void emit_report(const RunReport& r, ReportFormat format, const std::string& path);

}  // namespace urlab
