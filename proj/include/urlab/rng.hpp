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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace urlab {

/// Counter-based generator. Draw k of a stream is a pure function of
/// (key, k), so a run split across workers by counter ranges reproduces the
/// sequential run exactly. Streams are derived with split().
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc908ULL)) {}

  /// SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits_at(std::uint64_t counter) const { return mix(key_ ^ mix(counter)); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53;
  }

  double uniform() { return uniform_at(counter_++); }

  /// Standard normal via Box-Muller on two consecutive draws.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  /// Independent child stream.
  CounterRng split(std::uint64_t k) const {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(k ^ 0xd1b54a32d192ed03ULL));
    return child;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace urlab
