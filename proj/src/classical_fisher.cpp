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

#include "urlab/classical_fisher.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "urlab/rng.hpp"

namespace urlab {

namespace {

constexpr unsigned kMonteCarloWorkers = 4;

std::vector<std::string> index_labels(Eigen::Index n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void require_estimator_size(const StatisticalModel& model, const RVector& f) {
  if (static_cast<std::size_t>(f.size()) != model.size())
    throw Error(ErrorCode::InvalidOperand, "estimator length does not match the number of outcomes");
}

}  // namespace

StatisticalModel::StatisticalModel(std::vector<std::string> labels, RVector probs, RMatrix scores)
    : labels_(std::move(labels)), probs_(std::move(probs)), scores_(std::move(scores)) {
  const auto n = probs_.size();
  if (n == 0) throw Error(ErrorCode::InvalidOperand, "statistical model has no outcomes");
  if (static_cast<std::size_t>(n) != labels_.size() || scores_.rows() != n)
    throw Error(ErrorCode::InvalidOperand, "labels, probabilities and scores disagree in length");
  if ((probs_.array() <= 0.0).any()) throw Error(ErrorCode::InvalidOperand, "probabilities must be positive");
  if (std::abs(probs_.sum() - 1.0) > 1e-10)
    throw Error(ErrorCode::InvalidOperand, "probabilities do not sum to one");
  if (scores_.cols() > 0) {
    const RMatrix weighted = probs_.asDiagonal() * scores_;
    const double scale = std::max(1.0, weighted.cwiseAbs().maxCoeff());
    const RVector mean = weighted.colwise().sum().transpose();
    if (mean.cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw Error(ErrorCode::InvalidOperand, "scores do not have zero mean");
  }
}

StatisticalModel StatisticalModel::from_derivatives(std::vector<std::string> labels, const RVector& probs,
                                                    const RMatrix& dprobs) {
  if (dprobs.rows() != probs.size())
    throw Error(ErrorCode::InvalidOperand, "derivative rows do not match probabilities");
  if ((probs.array() <= 0.0).any()) throw Error(ErrorCode::InvalidOperand, "probabilities must be positive");
  RMatrix scores = probs.cwiseInverse().asDiagonal() * dprobs;
  return StatisticalModel(std::move(labels), probs, std::move(scores));
}

StochasticKernel::StochasticKernel(RMatrix k) : k_(std::move(k)) {
  if (k_.size() == 0) throw Error(ErrorCode::InvalidOperand, "empty stochastic kernel");
  if ((k_.array() < 0.0).any()) throw Error(ErrorCode::InvalidOperand, "stochastic kernel has negative entries");
  const RVector sums = k_.colwise().sum().transpose();
  if ((sums.array() - 1.0).abs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidOperand, "stochastic kernel columns must sum to one");
}

StochasticKernel StochasticKernel::identity(int n) { return StochasticKernel(RMatrix::Identity(n, n)); }

StochasticKernel StochasticKernel::merge_all(int n) { return StochasticKernel(RMatrix::Ones(1, n)); }

StochasticKernel StochasticKernel::binary_flip(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidOperand, "flip probability must lie in [0, 1]");
  RMatrix k(2, 2);
  k << 1.0 - q, q, q, 1.0 - q;
  return StochasticKernel(std::move(k));
}

StatisticalModel model_from_povm(const QuantumState& s, const Povm& m) {
  if (s.dim() != m.dim()) throw Error(ErrorCode::InvalidDimension, "state and POVM dimensions differ");
  const RVector p = outcome_probabilities(s, m);
  std::vector<std::string> labels;
  std::vector<double> kept_p;
  std::vector<RVector> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double pi = p(static_cast<Eigen::Index>(i));
    if (pi <= kProbabilityFloor) {
      if (operator_norm(m.effect(i)) > 1e-10)
        throw Error(ErrorCode::SingularModel,
                    "outcome '" + m.outcomes()[i] + "' has zero probability but a non-zero effect");
      continue;
    }
    labels.push_back(m.outcomes()[i]);
    kept_p.push_back(pi);
    rows.push_back(tangent_coords(m.effect(i)) / pi);
  }
  const auto n = static_cast<Eigen::Index>(kept_p.size());
  RVector probs(n);
  RMatrix scores(n, tangent_dim(s.dim()));
  for (Eigen::Index i = 0; i < n; ++i) {
    probs(i) = kept_p[static_cast<std::size_t>(i)];
    scores.row(i) = rows[static_cast<std::size_t>(i)].transpose();
  }
  // Clipping can leave the total a rounding error away from one.
  probs /= probs.sum();
  return StatisticalModel(std::move(labels), std::move(probs), std::move(scores));
}

FisherOperator fisher_operator(const StatisticalModel& model, std::optional<double> rank_tol) {
  const RMatrix factor = model.probs().cwiseSqrt().asDiagonal() * model.scores();
  return FisherOperator::from_factor(factor, rank_tol);
}

StatisticalModel markov_pushforward(const StatisticalModel& model, const StochasticKernel& k) {
  const RMatrix& km = k.matrix();
  if (static_cast<std::size_t>(km.cols()) != model.size())
    throw Error(ErrorCode::InvalidOperand, "kernel input size does not match the model");
  const RVector p_new = km * model.probs();
  const RMatrix num = km * (model.probs().asDiagonal() * model.scores());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index y = 0; y < p_new.size(); ++y)
    if (p_new(y) > kProbabilityFloor) keep.push_back(y);
  const auto n = static_cast<Eigen::Index>(keep.size());
  RVector probs(n);
  RMatrix scores(n, model.param_dim());
  std::vector<std::string> labels;
  const auto all_labels = index_labels(p_new.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index y = keep[static_cast<std::size_t>(i)];
    probs(i) = p_new(y);
    scores.row(i) = num.row(y) / p_new(y);
    labels.push_back(all_labels[static_cast<std::size_t>(y)]);
  }
  probs /= probs.sum();
  return StatisticalModel(std::move(labels), std::move(probs), std::move(scores));
}

MonotonicityReport monotonicity_check(const StatisticalModel& model, const StochasticKernel& k) {
  const FisherOperator j = fisher_operator(model);
  const FisherOperator j2 = fisher_operator(markov_pushforward(model, k));
  MonotonicityReport r;
  r.diff_min_eig = min_eigenvalue(RMatrix(j.matrix() - j2.matrix()));
  r.holds = r.diff_min_eig >= -1e-9 * std::max(j.norm(), 1e-300);
  return r;
}

RVector locally_unbiased_estimator(const StatisticalModel& model, const RVector& a, double target_value) {
  if (a.size() != model.param_dim()) throw Error(ErrorCode::InvalidOperand, "gradient length does not match model");
  const FisherOperator j = fisher_operator(model);
  if (j.kernel_violation(a) > 1e-8 * a.norm())
    throw Error(ErrorCode::NoUnbiasedEstimator,
                "gradient has a component in the kernel of the Fisher operator");
  const RVector phi = j.pinv() * a;
  return (model.scores() * phi).array() + target_value;
}

double estimator_mean(const StatisticalModel& model, const RVector& f) {
  require_estimator_size(model, f);
  return model.probs().dot(f);
}

double estimator_variance(const StatisticalModel& model, const RVector& f) {
  const double mu = estimator_mean(model, f);
  return model.probs().dot((f.array() - mu).square().matrix());
}

RVector estimator_gradient(const StatisticalModel& model, const RVector& f) {
  require_estimator_size(model, f);
  return model.scores().transpose() * model.probs().cwiseProduct(f);
}

MonteCarloResult monte_carlo_variance(const StatisticalModel& model, const RVector& f, std::size_t n,
                                      std::uint64_t seed) {
  require_estimator_size(model, f);
  if (n < 1000) throw Error(ErrorCode::InvalidOperand, "Monte Carlo needs at least 1000 samples");

  const RVector& p = model.probs();
  std::vector<double> cdf(static_cast<std::size_t>(p.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) cdf[static_cast<std::size_t>(i)] = (acc += p(i));
  const CounterRng rng(seed);

  struct Partial {
    double count = 0.0, mean = 0.0, m2 = 0.0;
  };
  std::vector<Partial> parts(kMonteCarloWorkers);
  auto work = [&](unsigned w) {
    const std::size_t lo = n * w / kMonteCarloWorkers;
    const std::size_t hi = n * (w + 1) / kMonteCarloWorkers;
    Partial& s = parts[w];
    for (std::size_t k = lo; k < hi; ++k) {
      const double u = rng.uniform_at(k) * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      const double x = f(it - cdf.begin());
      s.count += 1.0;
      const double delta = x - s.mean;
      s.mean += delta / s.count;
      s.m2 += delta * (x - s.mean);
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < kMonteCarloWorkers; ++w) threads.emplace_back(work, w);
  work(0);
  for (auto& t : threads) t.join();

  // Chan et al. pairwise merge in fixed worker order.
  Partial tot;
  for (const Partial& s : parts) {
    if (s.count == 0.0) continue;
    const double c = tot.count + s.count;
    const double delta = s.mean - tot.mean;
    tot.mean += delta * s.count / c;
    tot.m2 += s.m2 + delta * delta * tot.count * s.count / c;
    tot.count = c;
  }
  MonteCarloResult r;
  r.mean = tot.mean;
  r.var = tot.m2 / (tot.count - 1.0);
  r.var_stderr = std::sqrt(2.0 / (tot.count - 1.0)) * r.var;
  r.mean_stderr = std::sqrt(r.var / tot.count);
  return r;
}

}  // namespace urlab
