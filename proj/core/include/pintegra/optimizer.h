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

#ifndef PINTEGRA_OPTIMIZER_H_
#define PINTEGRA_OPTIMIZER_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pintegra/config.h"
#include "pintegra/costs.h"
#include "pintegra/dynamics.h"
#include "pintegra/noise.h"
#include "pintegra/plan.h"
#include "pintegra/rollout.h"
#include "pintegra/weights.h"

namespace pintegra {

class ThreadPool;

// Iterate of the path integral optimizer. delta_mu is the momentum fed to the
// next drift (NAG, AdaGrad) or the last applied increment (Baseline, Adam).
struct OptimizerState {
  ControlSequence mu;
  Momentum delta_mu;
  Eigen::MatrixXd adagrad_accumulator;
  Eigen::MatrixXd adam_first_moment;
  Eigen::MatrixXd adam_second_moment;
  int iteration = 0;

  // mu = 0, delta_mu = 0, accumulators zero, iteration 0.
  static OptimizerState Zero(int controls, int horizon);
};

// Mean the rollouts are sampled around: mu + gamma * delta_mu for the
// momentum methods, mu otherwise.
Eigen::MatrixXd SamplingMean(Method method, const PathIntegralConfig& config,
                             const OptimizerState& state);

// Applies one update law given the weighted noise average (the gradient
// estimate) computed around SamplingMean.
//   Baseline: dmu = g;                       mu += dmu
//   NAG:      dmu = gamma dmu + g;           mu += dmu
//   AdaGrad:  dmu = gamma dmu + g; G += dmu^2; mu += dmu / sqrt(G + eps)
//   Adam:     standard bias-corrected moments of g; mu += alpha m / (sqrt v + eps)
OptimizerState ApplyUpdate(Method method, const PathIntegralConfig& config,
                           const OptimizerState& state,
                           const Eigen::MatrixXd& gradient);

// Runs the K rollouts of one iteration and combines them into updates.
// Rollout k is written to slot k; the reduction runs on the calling thread
// in ascending k, so results are independent of the pool size.
class PathIntegralOptimizer {
 public:
  PathIntegralOptimizer(const DynamicsModel& dynamics, const CostModel& cost,
                        PathIntegralConfig config, int horizon,
                        ThreadPool* pool = nullptr);

  const PathIntegralConfig& config() const { return config_; }
  int horizon() const { return horizon_; }
  const DynamicsModel& dynamics() const { return dynamics_; }
  const CostModel& cost() const { return cost_; }

  // Dispatches on config().method().
  OptimizerState Update(const Eigen::VectorXd& x0, const OptimizerState& state,
                        const NoiseRealization& noise);

  OptimizerState BaselineUpdate(const Eigen::VectorXd& x0,
                                const OptimizerState& state,
                                const NoiseRealization& noise);
  OptimizerState NagUpdate(const Eigen::VectorXd& x0,
                           const OptimizerState& state,
                           const NoiseRealization& noise);
  OptimizerState AdaGradUpdate(const Eigen::VectorXd& x0,
                               const OptimizerState& state,
                               const NoiseRealization& noise);
  OptimizerState AdamUpdate(const Eigen::VectorXd& x0,
                            const OptimizerState& state,
                            const NoiseRealization& noise);

  // Rollouts, weights and weighted noise average of the latest update.
  std::span<const Rollout> last_rollouts() const { return rollouts_; }
  const WeightVector& last_weights() const { return weights_; }
  const Eigen::MatrixXd& last_gradient() const { return gradient_; }

  // Noise for iteration j of a run seeded with seed.
  NoiseRealization& SampleIterationNoise(std::uint64_t seed, int iteration);

 private:
  OptimizerState UpdateWith(Method method, const Eigen::VectorXd& x0,
                            const OptimizerState& state,
                            const NoiseRealization& noise);
  void EstimateGradient(const Eigen::VectorXd& x0,
                        const Eigen::MatrixXd& sampling_mean,
                        const NoiseRealization& noise);

  const DynamicsModel& dynamics_;
  const CostModel& cost_;
  PathIntegralConfig config_;
  int horizon_;
  ThreadPool* pool_;
  ControlCorrection correction_;

  std::vector<Rollout> rollouts_;
  std::vector<double> costs_;
  WeightVector weights_;
  Eigen::MatrixXd gradient_;
  NoiseRealization noise_;
};

struct OptimizeResult {
  ControlSequence mu;
  OptimizerState final_state;
  // Noise-free S_x + S_u of mu^(j), j = 0..U.
  std::vector<double> cost_history;
};

// Called after iteration j (1-based) with the new iterate and its cost.
using IterationCallback =
    std::function<void(int iteration, const OptimizerState& state, double cost)>;

// U updates from mu = 0, delta_mu = 0 with fresh noise each iteration, the
// noise of iteration j seeded with DeriveSeed(config.seed(), j).
OptimizeResult Optimize(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
                        const CostModel& cost, const PathIntegralConfig& config,
                        int horizon, ThreadPool* pool = nullptr,
                        const IterationCallback& callback = {});

}  // namespace pintegra

#endif  // PINTEGRA_OPTIMIZER_H_
