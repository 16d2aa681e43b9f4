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

#include "pintegra/rollout.h"

#include <cmath>
#include <limits>

namespace pintegra {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::span<double> ColumnSpan(Eigen::MatrixXd& m, int col) {
  return {m.col(col).data(), static_cast<std::size_t>(m.rows())};
}

// Simulates plan from x0 into states/controls. Returns false as soon as a
// state becomes non-finite.
bool Integrate(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
               const Eigen::MatrixXd& plan, const Eigen::MatrixXd* noise,
               Eigen::MatrixXd& states, Eigen::MatrixXd& controls) {
  const int horizon = static_cast<int>(plan.cols());
  states.resize(dynamics.state_dim(), horizon + 1);
  controls.resize(dynamics.control_dim(), horizon);
  states.col(0) = x0;
  for (int t = 0; t < horizon; ++t) {
    if (noise != nullptr) {
      controls.col(t) = plan.col(t) + noise->col(t);
    } else {
      controls.col(t) = plan.col(t);
    }
    dynamics.ClampControl(ColumnSpan(controls, t));
    dynamics.Step(ColumnSpan(states, t), ColumnSpan(controls, t),
                  ColumnSpan(states, t + 1));
    if (!states.col(t + 1).allFinite()) return false;
  }
  return true;
}

}  // namespace

void SimulateRollout(const Eigen::VectorXd& x0,
                     const Eigen::MatrixXd& sampling_mean,
                     const Eigen::MatrixXd& epsilon,
                     const DynamicsModel& dynamics, const CostModel& cost,
                     const ControlCorrection& correction, Rollout& out) {
  const bool finite = Integrate(x0, dynamics, sampling_mean, &epsilon,
                                out.states, out.controls);
  out.divergent = !finite;
  if (finite) {
    out.state_cost = StateCost(cost, out.states);
    out.control_correction =
        correction.Evaluate(sampling_mean, epsilon, out.controls);
    out.modified_cost = out.state_cost + out.control_correction;
    out.divergent = !std::isfinite(out.modified_cost);
  }
  if (out.divergent) {
    out.state_cost = kInfinity;
    out.control_correction = 0.0;
    out.modified_cost = kInfinity;
  }
}

Rollout SimulateRollout(const Eigen::VectorXd& x0, const ControlSequence& mu,
                        const Momentum& drift, double gamma,
                        const Eigen::MatrixXd& epsilon,
                        const DynamicsModel& dynamics, const CostModel& cost,
                        const ControlCorrection& correction,
                        int noise_index) {
  Rollout out;
  out.noise_index = noise_index;
  const Eigen::MatrixXd mean = mu.values() + gamma * drift.values();
  SimulateRollout(x0, mean, epsilon, dynamics, cost, correction, out);
  return out;
}

Eigen::MatrixXd SimulatePlan(const Eigen::VectorXd& x0,
                             const Eigen::MatrixXd& plan,
                             const DynamicsModel& dynamics) {
  Eigen::MatrixXd states, controls;
  Integrate(x0, dynamics, plan, nullptr, states, controls);
  return states;
}

TrajectoryCosts EvaluatePlan(const Eigen::VectorXd& x0,
                             const Eigen::MatrixXd& plan,
                             const DynamicsModel& dynamics,
                             const CostModel& cost) {
  Eigen::MatrixXd states, controls;
  TrajectoryCosts out;
  if (!Integrate(x0, dynamics, plan, nullptr, states, controls)) {
    out.state_cost = out.modified_cost = kInfinity;
    return out;
  }
  out.state_cost = StateCost(cost, states);
  out.control_cost = ControlCost(cost, controls);
  out.modified_cost = out.state_cost;
  return out;
}

}  // namespace pintegra
