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

#ifndef PINTEGRA_ROLLOUT_H_
#define PINTEGRA_ROLLOUT_H_

#include <Eigen/Core>

#include "pintegra/costs.h"
#include "pintegra/dynamics.h"
#include "pintegra/plan.h"

namespace pintegra {

// One simulated trajectory under a perturbed plan.
struct Rollout {
  Eigen::MatrixXd states;    // n x (T + 1), column 0 is the input state
  Eigen::MatrixXd controls;  // m x T, clamped commands actually applied
  int noise_index = 0;
  double state_cost = 0.0;
  double control_correction = 0.0;
  // state_cost + control_correction, or +infinity when divergent.
  double modified_cost = 0.0;
  bool divergent = false;
};

// Simulates u_t = nu_t + eps_t from x0 and fills out. A non-finite state
// marks the rollout divergent and sets both costs to +infinity. out's
// storage is reused when it already has the right shape.
void SimulateRollout(const Eigen::VectorXd& x0,
                     const Eigen::MatrixXd& sampling_mean,
                     const Eigen::MatrixXd& epsilon,
                     const DynamicsModel& dynamics, const CostModel& cost,
                     const ControlCorrection& correction, Rollout& out);

// Simulates u_t = mu_t + gamma * drift_t + eps_t. With gamma = 0 this is
// the plain perturbed plan.
Rollout SimulateRollout(const Eigen::VectorXd& x0, const ControlSequence& mu,
                        const Momentum& drift, double gamma,
                        const Eigen::MatrixXd& epsilon,
                        const DynamicsModel& dynamics, const CostModel& cost,
                        const ControlCorrection& correction,
                        int noise_index = 0);

// Noise-free costs of executing plan from x0 (controls clamped by the
// model). Non-finite states give infinite costs.
TrajectoryCosts EvaluatePlan(const Eigen::VectorXd& x0,
                             const Eigen::MatrixXd& plan,
                             const DynamicsModel& dynamics,
                             const CostModel& cost);

// States visited by plan from x0, n x (T + 1).
Eigen::MatrixXd SimulatePlan(const Eigen::VectorXd& x0,
                             const Eigen::MatrixXd& plan,
                             const DynamicsModel& dynamics);

}  // namespace pintegra

#endif  // PINTEGRA_ROLLOUT_H_
