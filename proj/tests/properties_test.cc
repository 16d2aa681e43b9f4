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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "pintegra/config.h"
#include "pintegra/ddp.h"
#include "pintegra/noise.h"
#include "pintegra/optimizer.h"
#include "pintegra/rollout.h"
#include "pintegra/tasks.h"
#include "pintegra/weights.h"

namespace pintegra {
namespace {

TEST(WeightPropertyTest, OffsetInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> cost(0.0, 20.0);
  std::uniform_real_distribution<double> offset(-1e3, 1e3);
  PathIntegralOptions o;
  o.sigma = Eigen::MatrixXd::Identity(2, 2);
  o.num_rollouts = 16;
  const PathIntegralConfig config(o);
  for (int i = 0; i < 200; ++i) {
    const NoiseRealization noise = SampleNoise(config, 4, i);
    std::vector<double> a(16), b(16);
    const double c = offset(rng);
    for (int k = 0; k < 16; ++k) {
      a[k] = cost(rng);
      b[k] = a[k] + c;
    }
    const double lambda = 0.01 + i * 0.05;
    const WeightVector wa = ComputeWeights(a, lambda);
    const WeightVector wb = ComputeWeights(b, lambda);
    EXPECT_LT((wa.values - wb.values).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((WeightedNoiseAverage(wa, noise) -
               WeightedNoiseAverage(wb, noise))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
  }
}

TEST(WeightPropertyTest, AntitheticPairsCancelExactly) {
  PathIntegralOptions o;
  o.sigma = Eigen::MatrixXd::Identity(3, 3);
  o.num_rollouts = 5;
  const PathIntegralConfig config(o);
  const NoiseRealization base = SampleNoise(config, 6, 2);
  NoiseRealization noise;
  for (const auto& e : base.epsilon) {
    noise.epsilon.push_back(e);
    noise.epsilon.push_back(-e);
  }
  const std::vector<double> costs(noise.rollouts(), 3.7);
  const WeightVector w = ComputeWeights(costs, 0.05);
  EXPECT_TRUE(WeightedNoiseAverage(w, noise).isZero(0.0));
}

// log N(u; 0, S) - log N(u; mu, S) summed over time, in long double.
long double LogLikelihoodRatio(const Eigen::MatrixXd& mu,
                               const Eigen::MatrixXd& eps,
                               const Eigen::MatrixXd& sigma_inv) {
  long double total = 0;
  for (Eigen::Index t = 0; t < mu.cols(); ++t) {
    const Eigen::VectorXd u = mu.col(t) + eps.col(t);
    total += -0.5L * u.dot(sigma_inv * u) +
             0.5L * eps.col(t).dot(sigma_inv * eps.col(t));
  }
  return total;
}

TEST(WeightPropertyTest, LikelihoodRatioExponentMatchesDensities) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.2, 2.0);
  HovercraftDynamics dynamics;
  HovercraftCost cost;
  cost.set_target(Eigen::Vector2d(0.5, -0.5));
  for (int i = 0; i < 50; ++i) {
    PathIntegralOptions o;
    Eigen::Matrix2d l;
    l << unit(rng), 0.0, 0.3 * normal(rng), unit(rng);
    o.sigma = 0.01 * l * l.transpose();
    o.lambda = 0.05 * unit(rng);
    o.num_rollouts = 8;
    o.exponent = WeightExponent::kLikelihoodRatio;
    const PathIntegralConfig config(o);
    Eigen::MatrixXd mu(2, 5);
    for (Eigen::Index j = 0; j < mu.size(); ++j) mu.data()[j] = 0.2 * normal(rng);
    const NoiseRealization noise = SampleNoise(config, 5, i);
    const ControlCorrection correction = ControlCorrection::For(config, cost);

    std::vector<Rollout> rollouts;
    std::vector<double> exponent;
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(8);
    for (int k = 0; k < 8; ++k) {
      Rollout r;
      SimulateRollout(x0, mu, noise.epsilon[k], dynamics, cost, correction, r);
      exponent.push_back(
          static_cast<double>(-r.state_cost / o.lambda +
                              LogLikelihoodRatio(mu, noise.epsilon[k],
                                                 config.sigma_inverse())));
      rollouts.push_back(std::move(r));
    }
    // Softmax of the exponent, written as costs for the oracle.
    std::vector<double> as_costs;
    for (double e : exponent) as_costs.push_back(-e);
    const std::vector<double> expected = testing::SoftmaxOracle(as_costs, 1.0);
    const WeightVector w = ComputeWeights(rollouts, o.lambda);
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(w[k], expected[k], 1e-9);
  }
}

TEST(ConvergenceTest, PendulumNagEnvelope) {
  const TaskInstance task = MakeTask(Task::kPendulum, {});
  PathIntegralOptions o;
  o.sigma = DiagonalSigma(DefaultNoiseStd(Task::kPendulum, Experiment::kConverge));
  o.lambda = 0.01;
  o.num_rollouts = 1000;
  o.num_iterations = 100;
  o.gamma = 0.8;
  o.method = Method::kNag;
  o.exponent = WeightExponent::kTrajectoryCost;
  const Eigen::Vector2d x0(2.5, 0.0);
  const OptimizeResult r = Optimize(x0, *task.dynamics, *task.cost,
                                    PathIntegralConfig(o), task.horizon);
  const std::vector<double>& h = r.cost_history;
  double best = h[10];
  for (std::size_t j = 11; j < h.size(); ++j) {
    EXPECT_LE(h[j], 1.05 * best) << "iteration " << j;
    best = std::min(best, h[j]);
  }
  EXPECT_LT(h.back(), 0.2 * h.front());
  const DdpResult ddp =
      SolveDdp(x0, *task.dynamics, *task.cost,
               Eigen::MatrixXd::Zero(1, task.horizon));
  EXPECT_LE(h.back(), 1.01 * ddp.final_cost());
}

TEST(ConvergenceTest, PendulumHangingRestIsStationary) {
  // No plan beats the zero plan from the hanging rest state over the default
  // horizon; the optimizer must not drift away from it.
  const TaskInstance task = MakeTask(Task::kPendulum, {});
  const Eigen::Vector2d x0 = Eigen::Vector2d::Zero();
  const DdpResult ddp = SolveDdp(x0, *task.dynamics, *task.cost,
                                 Eigen::MatrixXd::Zero(1, task.horizon));
  PathIntegralOptions o;
  o.sigma = DiagonalSigma(DefaultNoiseStd(Task::kPendulum, Experiment::kConverge));
  o.num_rollouts = 1000;
  o.num_iterations = 100;
  o.exponent = WeightExponent::kTrajectoryCost;
  const OptimizeResult r = Optimize(x0, *task.dynamics, *task.cost,
                                    PathIntegralConfig(o), task.horizon);
  EXPECT_EQ(ddp.final_cost(), r.cost_history.front());
  EXPECT_LE(r.cost_history.back(), 1.05 * ddp.final_cost());
}

}  // namespace
}  // namespace pintegra
