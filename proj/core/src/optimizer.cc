// Copyright 2026 The Pintegra Authors
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

#include "pintegra/optimizer.h"

#include <cmath>
#include <utility>

#include "pintegra/error.h"
#include "pintegra/thread_pool.h"

namespace pintegra {

OptimizerState OptimizerState::Zero(int controls, int horizon) {
  OptimizerState s{ControlSequence(controls, horizon),
                   Momentum(controls, horizon),
                   Eigen::MatrixXd::Zero(controls, horizon),
                   Eigen::MatrixXd::Zero(controls, horizon),
                   Eigen::MatrixXd::Zero(controls, horizon),
                   0};
  return s;
}

namespace {

bool UsesMomentumDrift(Method method) {
  return method == Method::kNag || method == Method::kAdaGrad;
}

}  // namespace

Eigen::MatrixXd SamplingMean(Method method, const PathIntegralConfig& config,
                             const OptimizerState& state) {
  if (UsesMomentumDrift(method)) {
    return state.mu.values() + config.gamma() * state.delta_mu.values();
  }
  return state.mu.values();
}

OptimizerState ApplyUpdate(Method method, const PathIntegralConfig& config,
                           const OptimizerState& state,
                           const Eigen::MatrixXd& gradient) {
  const PathIntegralOptions& opt = config.options();
  OptimizerState next = state;
  next.iteration = state.iteration + 1;
  switch (method) {
    case Method::kBaseline:
      next.delta_mu = Momentum(gradient);
      next.mu = ControlSequence(state.mu.values() + gradient);
      break;
    case Method::kNag: {
      Eigen::MatrixXd dmu = config.gamma() * state.delta_mu.values() + gradient;
      next.mu = ControlSequence(state.mu.values() + dmu);
      next.delta_mu = Momentum(std::move(dmu));
      break;
    }
    case Method::kAdaGrad: {
      Eigen::MatrixXd dmu = config.gamma() * state.delta_mu.values() + gradient;
      next.adagrad_accumulator = state.adagrad_accumulator + dmu.cwiseAbs2();
      const Eigen::MatrixXd step =
          dmu.array() /
          (next.adagrad_accumulator.array() + opt.adagrad_epsilon).sqrt();
      next.mu = ControlSequence(state.mu.values() + step);
      next.delta_mu = Momentum(std::move(dmu));
      break;
    }
    case Method::kAdam: {
      const double t = static_cast<double>(next.iteration);
      next.adam_first_moment = opt.adam_beta1 * state.adam_first_moment +
                               (1.0 - opt.adam_beta1) * gradient;
      next.adam_second_moment = opt.adam_beta2 * state.adam_second_moment +
                                (1.0 - opt.adam_beta2) * gradient.cwiseAbs2();
      const double c1 = 1.0 - std::pow(opt.adam_beta1, t);
      const double c2 = 1.0 - std::pow(opt.adam_beta2, t);
      Eigen::MatrixXd step =
          opt.adam_alpha * (next.adam_first_moment.array() / c1) /
          ((next.adam_second_moment.array() / c2).sqrt() + opt.adam_epsilon);
      next.mu = ControlSequence(state.mu.values() + step);
      next.delta_mu = Momentum(std::move(step));
      break;
    }
  }
  return next;
}

PathIntegralOptimizer::PathIntegralOptimizer(const DynamicsModel& dynamics,
                                             const CostModel& cost,
                                             PathIntegralConfig config,
                                             int horizon, ThreadPool* pool)
    : dynamics_(dynamics),
      cost_(cost),
      config_(std::move(config)),
      horizon_(horizon),
      pool_(pool),
      correction_(ControlCorrection::For(config_, cost)) {
  if (horizon_ <= 0) throw ConfigError("horizon must be positive");
  if (config_.control_dim() != dynamics_.control_dim()) {
    throw ConfigError("sigma dimension does not match the control dimension");
  }
}

OptimizerState PathIntegralOptimizer::Update(const Eigen::VectorXd& x0,
                                             const OptimizerState& state,
                                             const NoiseRealization& noise) {
  return UpdateWith(config_.method(), x0, state, noise);
}

OptimizerState PathIntegralOptimizer::BaselineUpdate(
    const Eigen::VectorXd& x0, const OptimizerState& state,
    const NoiseRealization& noise) {
  return UpdateWith(Method::kBaseline, x0, state, noise);
}

OptimizerState PathIntegralOptimizer::NagUpdate(const Eigen::VectorXd& x0,
                                                const OptimizerState& state,
                                                const NoiseRealization& noise) {
  return UpdateWith(Method::kNag, x0, state, noise);
}

OptimizerState PathIntegralOptimizer::AdaGradUpdate(
    const Eigen::VectorXd& x0, const OptimizerState& state,
    const NoiseRealization& noise) {
  return UpdateWith(Method::kAdaGrad, x0, state, noise);
}

OptimizerState PathIntegralOptimizer::AdamUpdate(
    const Eigen::VectorXd& x0, const OptimizerState& state,
    const NoiseRealization& noise) {
  return UpdateWith(Method::kAdam, x0, state, noise);
}

NoiseRealization& PathIntegralOptimizer::SampleIterationNoise(
    std::uint64_t seed, int iteration) {
  SampleNoiseInto(config_, horizon_,
                  DeriveSeed(seed, static_cast<std::uint64_t>(iteration)),
                  noise_, pool_);
  return noise_;
}

OptimizerState PathIntegralOptimizer::UpdateWith(
    Method method, const Eigen::VectorXd& x0, const OptimizerState& state,
    const NoiseRealization& noise) {
  if (state.mu.horizon() != horizon_ ||
      state.mu.controls() != dynamics_.control_dim()) {
    throw ConfigError("plan shape does not match the optimizer");
  }
  if (x0.size() != dynamics_.state_dim()) {
    throw ConfigError("initial state has the wrong dimension");
  }
  if (noise.rollouts() == 0) throw ConfigError("noise has no rollouts");
  EstimateGradient(x0, SamplingMean(method, config_, state), noise);
  return ApplyUpdate(method, config_, state, gradient_);
}

void PathIntegralOptimizer::EstimateGradient(
    const Eigen::VectorXd& x0, const Eigen::MatrixXd& sampling_mean,
    const NoiseRealization& noise) {
  const int k_total = noise.rollouts();
  rollouts_.resize(k_total);
  ParallelFor(pool_, k_total, [&](int k) {
    Rollout& r = rollouts_[k];
    r.noise_index = k;
    SimulateRollout(x0, sampling_mean, noise.epsilon[k], dynamics_, cost_,
                    correction_, r);
  });
  weights_ = ComputeWeights(std::span<const Rollout>(rollouts_),
                            config_.lambda());
  gradient_ = WeightedNoiseAverage(weights_, noise);
}

OptimizeResult Optimize(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
                        const CostModel& cost, const PathIntegralConfig& config,
                        int horizon, ThreadPool* pool,
                        const IterationCallback& callback) {
  PathIntegralOptimizer optimizer(dynamics, cost, config, horizon, pool);
  OptimizerState state = OptimizerState::Zero(dynamics.control_dim(), horizon);
  std::vector<double> history;
  history.reserve(config.num_iterations() + 1);
  history.push_back(EvaluatePlan(x0, state.mu.values(), dynamics, cost).total());
  for (int j = 0; j < config.num_iterations(); ++j) {
    const NoiseRealization& noise =
        optimizer.SampleIterationNoise(config.seed(), j);
    state = optimizer.Update(x0, state, noise);
    history.push_back(
        EvaluatePlan(x0, state.mu.values(), dynamics, cost).total());
    if (callback) callback(j + 1, state, history.back());
  }
  OptimizeResult result{state.mu, state, std::move(history)};
  return result;
}

}  // namespace pintegra
