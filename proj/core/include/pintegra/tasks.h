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

#ifndef PINTEGRA_TASKS_H_
#define PINTEGRA_TASKS_H_

#include <cstdint>
#include <memory>
#include <string_view>

#include <Eigen/Core>

#include "pintegra/config.h"
#include "pintegra/costs.h"
#include "pintegra/dynamics.h"
#include "pintegra/mpc.h"

namespace pintegra {

enum class Task { kPendulum, kHovercraft, kQuadrotor, kCar };

std::string_view TaskName(Task task);
// Accepts the names returned by TaskName. Throws ConfigError.
Task ParseTask(std::string_view name);

struct ModelParams {
  PendulumParams pendulum;
  HovercraftParams hovercraft;
  QuadrotorParams quadrotor;
  CarParams car;
};

enum class Experiment { kConverge, kMpc };

// A task's plant, cost and planning horizon.
struct TaskInstance {
  Task task = Task::kPendulum;
  std::unique_ptr<DynamicsModel> dynamics;
  std::unique_ptr<CostModel> cost;
  int horizon = 0;
};

TaskInstance MakeTask(Task task, const ModelParams& params = {},
                      Experiment experiment = Experiment::kConverge);

// Pendulum 30 (80 under MPC), hovercraft 40, quadrotor 40, car 30.
int DefaultHorizon(Task task, Experiment experiment = Experiment::kConverge);

// Per-channel noise standard deviation used by the experiment presets.
Eigen::VectorXd DefaultNoiseStd(Task task, Experiment experiment);
// diag(std^2).
Eigen::MatrixXd DiagonalSigma(const Eigen::VectorXd& std_dev);

// Random initial state for convergence runs:
//   pendulum   theta ~ U(-pi, pi], theta' ~ U(-1, 1)
//   hovercraft position ~ U(-1.5, 1.5)^2, heading ~ U(-pi, pi], at rest;
//              target at the origin
//   quadrotor  position ~ U(-1, 1)^3, level, at rest, rotors at hover speed;
//              target at the origin
//   car        on the track ellipse at a uniform angle, tangent heading
//              (counter-clockwise), forward speed ~ U(0.5, 1.25)
Eigen::VectorXd SampleInitialState(const TaskInstance& task,
                                   std::uint64_t seed);

// Fixed start for MPC runs: pendulum hanging, hovercraft and quadrotor at the
// origin at rest, car at (2, 0) facing +y at rest.
Eigen::VectorXd MpcInitialState(const TaskInstance& task);

// Completion rule of the task. Waypoint radii are 0.2 m (hovercraft) and
// 0.3 m (quadrotor); waypoints depend only on seed. May retarget the cost.
std::unique_ptr<TaskScheduler> MakeScheduler(TaskInstance& task,
                                             std::uint64_t seed);

}  // namespace pintegra

#endif  // PINTEGRA_TASKS_H_
