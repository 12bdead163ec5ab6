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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "urlab/operator_core.hpp"
#include "urlab/quantum_model.hpp"

namespace urlab {

/// Outcomes with probability at or below this are dropped from models.
inline constexpr double kProbabilityFloor = 1e-12;

/// Finite-outcome statistical model at one parameter point. scores(x, a) is
/// the logarithmic derivative l(x; e_a) along tangent basis direction a, so
/// row x is the logarithmic gradient kappa(x) in coordinates.
class StatisticalModel {
 public:
  /// Validates: probabilities positive and summing to 1 within 1e-10, and
  /// zero-mean scores sum_x p(x) l(x; e_a) = 0 within 1e-9.
  StatisticalModel(std::vector<std::string> labels, RVector probs, RMatrix scores);

  /// Builds scores as dprobs(x, a) / p(x) from probability derivatives.
  static StatisticalModel from_derivatives(std::vector<std::string> labels, const RVector& probs,
                                           const RMatrix& dprobs);

  std::size_t size() const { return labels_.size(); }
  int param_dim() const { return static_cast<int>(scores_.cols()); }
  const std::vector<std::string>& outcomes() const { return labels_; }
  const RVector& probs() const { return probs_; }
  const RMatrix& scores() const { return scores_; }

 private:
  std::vector<std::string> labels_;
  RVector probs_;
  RMatrix scores_;
};

using FisherOperator = PsdOperator<double>;

/// Column-stochastic matrix K(y|x): rows index new outcomes, columns old.
class StochasticKernel {
 public:
  /// Throws InvalidOperand on negative entries or columns not summing to 1
  /// within 1e-12.
  explicit StochasticKernel(RMatrix k);

  static StochasticKernel identity(int n);
  static StochasticKernel merge_all(int n);
  /// Binary symmetric channel with flip probability q.
  static StochasticKernel binary_flip(double q);

  const RMatrix& matrix() const { return k_; }

 private:
  RMatrix k_;
};

/// p(x) = Tr[rho E_x], l(x; phi) = Tr[phi E_x] / p(x). Zero-probability
/// outcomes are dropped; throws SingularModel if such an outcome has a
/// non-negligible effect.
StatisticalModel model_from_povm(const QuantumState& s, const Povm& m);

/// J_ab = sum_x p(x) l(x; e_a) l(x; e_b), assembled from the score factor
/// sqrt(p) * scores.
FisherOperator fisher_operator(const StatisticalModel& model, std::optional<double> rank_tol = {});

/// Pushes the model through K: p' = K p and scores by conditional
/// expectation l'(y) = sum_x K(y|x) p(x) l(x) / p'(y).
StatisticalModel markov_pushforward(const StatisticalModel& model, const StochasticKernel& k);

struct MonotonicityReport {
  double diff_min_eig = 0.0;
  bool holds = false;
};

/// min eig(J - J') >= -1e-9 ||J||.
MonotonicityReport monotonicity_check(const StatisticalModel& model, const StochasticKernel& k);

/// Estimator f(x) = target + <kappa(x), J^+ a>: locally unbiased for a
/// function with value `target` and gradient `a`, and CR-efficient.
/// Throws NoUnbiasedEstimator if a has a component in ker J.
RVector locally_unbiased_estimator(const StatisticalModel& model, const RVector& a, double target_value);

double estimator_mean(const StatisticalModel& model, const RVector& f);
double estimator_variance(const StatisticalModel& model, const RVector& f);
/// Gradient of theta -> E_theta[f]: sum_x p(x) f(x) kappa(x).
RVector estimator_gradient(const StatisticalModel& model, const RVector& f);

struct MonteCarloResult {
  double mean = 0.0;
  double var = 0.0;
  /// Normal-theory standard error of `var`: sqrt(2 / (n - 1)) var.
  double var_stderr = 0.0;
  /// Standard error of `mean`: sqrt(var / n).
  double mean_stderr = 0.0;
};

/// Sample mean and variance of f over n i.i.d. draws (n >= 1000). Draws are
/// split across a fixed number of workers by counter range, so the result
/// is a deterministic function of the seed.
MonteCarloResult monte_carlo_variance(const StatisticalModel& model, const RVector& f, std::size_t n,
                                      std::uint64_t seed);

}  // namespace urlab
