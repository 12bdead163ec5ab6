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
#include <functional>
#include <string>
#include <vector>

#include "urlab/rng.hpp"

namespace urlab {

/// Randomized invariant. `check` draws everything it needs from the stream
/// and returns whether the invariant held at dimension d.
struct Property {
  std::string suite;
  std::string name;
  std::function<bool(CounterRng&, int)> check;
};

/// All registered properties, grouped by suite (core, classical, quantum,
/// uncertainty) in a fixed order.
const std::vector<Property>& property_registry();

/// Looks up "suite.name"; throws Usage if absent.
const Property& find_property(const std::string& qualified_name);

struct PropertyTally {
  int passed = 0;
  int trials = 0;
};

/// Trial t runs with stream CounterRng(seed).split(hash(name)).split(t) at a
/// dimension drawn uniformly from [dim_min, dim_max]. Exceptions count as
/// failures.
PropertyTally run_property(const Property& p, int trials, std::uint64_t seed, int dim_min, int dim_max);

}  // namespace urlab
