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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "urlab/report.hpp"

namespace urlab {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RowStatus status_from_string(const std::string& s) {
  if (s == "pass") return RowStatus::Pass;
  if (s == "fail") return RowStatus::Fail;
  if (s == "infinite") return RowStatus::Infinite;
  throw Error(ErrorCode::Config, "unknown row status '" + s + "'");
}

CheckKind check_from_string(const std::string& s) {
  if (s == "equals") return CheckKind::Equals;
  if (s == "at_least") return CheckKind::AtLeast;
  if (s == "at_most") return CheckKind::AtMost;
  if (s == "infinite") return CheckKind::Infinite;
  throw Error(ErrorCode::Config, "unknown check kind '" + s + "'");
}

json number_or_inf(bool inf, double v) { return inf ? json("inf") : json(v); }

double read_number(const json& j, bool* inf) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw Error(ErrorCode::Config, "expected a number or \"inf\"");
    if (inf) *inf = true;
    return 0.0;
  }
  if (inf) *inf = false;
  return j.get<double>();
}

}  // namespace

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Fail: return "fail";
    case RowStatus::Infinite: return "infinite";
  }
  return "?";
}

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Equals: return "equals";
    case CheckKind::AtLeast: return "at_least";
    case CheckKind::AtMost: return "at_most";
    case CheckKind::Infinite: return "infinite";
  }
  return "?";
}

bool RunReport::all_pass() const {
  return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == RowStatus::Fail; });
}

void RunReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.quantity < b.quantity; });
}

void RunReport::add_equals(const std::string& quantity, double value, double expected, double tol) {
  const double gap = value - expected;
  const bool ok = std::isfinite(value) && std::abs(gap) <= tol;
  rows.push_back({scenario, quantity, false, value, expected, gap, ok ? RowStatus::Pass : RowStatus::Fail,
                  CheckKind::Equals});
}

void RunReport::add_at_least(const std::string& quantity, double value, double bound, double tol) {
  const double gap = value - bound;
  const bool ok = std::isfinite(value) && gap >= -tol;
  rows.push_back({scenario, quantity, false, value, bound, gap, ok ? RowStatus::Pass : RowStatus::Fail,
                  CheckKind::AtLeast});
}

void RunReport::add_at_most(const std::string& quantity, double value, double bound, double tol) {
  const double gap = value - bound;
  const bool ok = std::isfinite(value) && gap <= tol;
  rows.push_back({scenario, quantity, false, value, bound, gap, ok ? RowStatus::Pass : RowStatus::Fail,
                  CheckKind::AtMost});
}

void RunReport::add_expect_infinite(const std::string& quantity, const ErrorResult& r) {
  rows.push_back({scenario, quantity, r.infinite, r.infinite ? 0.0 : r.value, 0.0, r.infinite ? 0.0 : r.value,
                  r.infinite ? RowStatus::Infinite : RowStatus::Fail, CheckKind::Infinite});
}

void RunReport::add_error_at_most(const std::string& quantity, const ErrorResult& r, double bound) {
  if (r.infinite) {
    rows.push_back({scenario, quantity, true, 0.0, bound, 0.0, RowStatus::Fail, CheckKind::AtMost});
    return;
  }
  add_at_most(quantity, r.value, bound);
}

void RunReport::add_error_equals(const std::string& quantity, const ErrorResult& r, double expected, double tol) {
  if (r.infinite) {
    rows.push_back({scenario, quantity, true, 0.0, expected, 0.0, RowStatus::Fail, CheckKind::Equals});
    return;
  }
  add_equals(quantity, r.value, expected, tol);
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream os;
  os << "scenario,quantity,value,bound,gap,status\n";
  for (const auto& row : r.rows) {
    os << row.scenario << ',' << row.quantity << ',' << (row.value_infinite ? "inf" : fmt(row.value)) << ','
       << fmt(row.bound) << ',' << (row.value_infinite ? "inf" : fmt(row.gap)) << ',' << to_string(row.status)
       << '\n';
  }
  return os.str();
}

std::string report_to_json(const RunReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"scenario", row.scenario},
                    {"quantity", row.quantity},
                    {"value", number_or_inf(row.value_infinite, row.value)},
                    {"bound", row.bound},
                    {"gap", number_or_inf(row.value_infinite, row.gap)},
                    {"status", to_string(row.status)},
                    {"check", to_string(row.check)}});
  }
  json j = {{"scenario", r.scenario},
            {"all_pass", r.all_pass()},
            {"metadata",
             {{"seed", r.metadata.seed},
              {"dims", r.metadata.dims},
              {"wall_time_s", r.metadata.wall_time_s},
              {"version", r.metadata.version}}},
            {"rows", rows}};
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.scenario = j.at("scenario").get<std::string>();
    const json& m = j.at("metadata");
    r.metadata.seed = m.at("seed").get<std::uint64_t>();
    r.metadata.dims = m.at("dims").get<std::vector<int>>();
    r.metadata.wall_time_s = m.at("wall_time_s").get<double>();
    r.metadata.version = m.at("version").get<std::string>();
    for (const json& jr : j.at("rows")) {
      ReportRow row;
      row.scenario = jr.at("scenario").get<std::string>();
      row.quantity = jr.at("quantity").get<std::string>();
      row.value = read_number(jr.at("value"), &row.value_infinite);
      row.bound = jr.at("bound").get<double>();
      row.gap = read_number(jr.at("gap"), nullptr);
      row.status = status_from_string(jr.at("status").get<std::string>());
      row.check = check_from_string(jr.value("check", std::string("equals")));
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("malformed report JSON: ") + e.what());
  }
}

void emit_report(const RunReport& r, ReportFormat format, const std::string& path) {
  const std::string text = format == ReportFormat::Csv ? report_to_csv(r) : report_to_json(r);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

ScenarioConfig scenario_config_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::Config, "config must be a JSON object");
    for (const auto& [k, v] : j.items()) {
      (void)v;
      if (k != "name" && k != "dim" && k != "seed" && k != "params" && k != "cutoffs" && k != "tolerances")
        throw Error(ErrorCode::Config, "unknown config key '" + k + "'");
    }
    ScenarioConfig c;
    c.name = j.at("name").get<std::string>();
    c.dim = j.value("dim", 0);
    if (j.contains("seed")) {
      if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
        throw Error(ErrorCode::Config, "seed must be a nonnegative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("params")) c.params = j["params"].get<std::map<std::string, double>>();
    if (j.contains("cutoffs")) c.cutoffs = j["cutoffs"].get<std::vector<int>>();
    if (j.contains("tolerances")) c.tolerances = j["tolerances"].get<std::map<std::string, double>>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("invalid config: ") + e.what());
  }
}

}  // namespace urlab
