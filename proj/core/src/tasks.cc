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

#include "pintegra/tasks.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pintegra/error.h"
#include "pintegra/noise.h"

namespace pintegra {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream tags keep initial states and waypoints independent of the noise.
constexpr std::uint64_t kInitialStateStream = 0x1417ULL << 32;
constexpr std::uint64_t kWaypointStream = 0x3a7fULL << 32;

}  // namespace

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kPendulum:
      return "pendulum";
    case Task::kHovercraft:
      return "hovercraft";
    case Task::kQuadrotor:
      return "quadrotor";
    case Task::kCar:
      return "car";
  }
  return "unknown";
}

Task ParseTask(std::string_view name) {
  for (Task t : {Task::kPendulum, Task::kHovercraft, Task::kQuadrotor,
                 Task::kCar}) {
    if (TaskName(t) == name) return t;
  }
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

int DefaultHorizon(Task task, Experiment experiment) {
  switch (task) {
    case Task::kPendulum:
      return experiment == Experiment::kMpc ? 80 : 30;
    case Task::kCar:
      return 30;
    case Task::kHovercraft:
    case Task::kQuadrotor:
      return 40;
  }
  return 30;
}

TaskInstance MakeTask(Task task, const ModelParams& params,
                      Experiment experiment) {
  TaskInstance out;
  out.task = task;
  out.horizon = DefaultHorizon(task, experiment);
  switch (task) {
    case Task::kPendulum:
      out.dynamics = std::make_unique<PendulumDynamics>(params.pendulum);
      out.cost = std::make_unique<PendulumCost>();
      break;
    case Task::kHovercraft:
      out.dynamics = std::make_unique<HovercraftDynamics>(params.hovercraft);
      out.cost = std::make_unique<HovercraftCost>();
      break;
    case Task::kQuadrotor:
      out.dynamics = std::make_unique<QuadrotorDynamics>(params.quadrotor);
      out.cost = std::make_unique<QuadrotorCost>();
      break;
    case Task::kCar:
      out.dynamics = std::make_unique<CarDynamics>(params.car);
      out.cost = std::make_unique<CarCost>();
      break;
  }
  return out;
}

Eigen::VectorXd DefaultNoiseStd(Task task, Experiment experiment) {
  const bool mpc = experiment == Experiment::kMpc;
  switch (task) {
    case Task::kPendulum:
      return Eigen::VectorXd::Constant(1, mpc ? 0.02 : 0.0055);
    case Task::kHovercraft:
      return Eigen::VectorXd::Constant(2, mpc ? 0.004 : 0.02);
    case Task::kQuadrotor:
      return Eigen::VectorXd::Constant(4, mpc ? 200.0 : 100.0);
    case Task::kCar: {
      Eigen::VectorXd s(2);
      s << 0.02, 0.1;
      return s;
    }
  }
  return {};
}

Eigen::MatrixXd DiagonalSigma(const Eigen::VectorXd& std_dev) {
  return std_dev.cwiseAbs2().asDiagonal();
}

Eigen::VectorXd SampleInitialState(const TaskInstance& task,
                                   std::uint64_t seed) {
  std::mt19937_64 engine(DeriveSeed(seed, kInitialStateStream));
  auto uniform = [&engine](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(task.dynamics->state_dim());
  switch (task.task) {
    case Task::kPendulum:
      x[PendulumDynamics::kTheta] = WrapAngle(uniform(-kPi, kPi));
      x[PendulumDynamics::kThetaDot] = uniform(-1.0, 1.0);
      break;
    case Task::kHovercraft:
      x[HovercraftDynamics::kX] = uniform(-1.5, 1.5);
      x[HovercraftDynamics::kY] = uniform(-1.5, 1.5);
      x[HovercraftDynamics::kTheta] = WrapAngle(uniform(-kPi, kPi));
      break;
    case Task::kQuadrotor: {
      const auto& quad = static_cast<const QuadrotorDynamics&>(*task.dynamics);
      x[QuadrotorDynamics::kPx] = uniform(-1.0, 1.0);
      x[QuadrotorDynamics::kPy] = uniform(-1.0, 1.0);
      x[QuadrotorDynamics::kPz] = uniform(-1.0, 1.0);
      x[QuadrotorDynamics::kQw] = 1.0;
      x.segment<4>(QuadrotorDynamics::kRotor1).setConstant(
          quad.HoverRotorSpeed());
      break;
    }
    case Task::kCar: {
      const double phi = uniform(-kPi, kPi);
      x[CarDynamics::kX] = 2.0 * std::cos(phi);
      x[CarDynamics::kY] = std::sin(phi);
      x[CarDynamics::kYaw] =
          std::atan2(std::cos(phi), -2.0 * std::sin(phi));
      x[CarDynamics::kVx] = uniform(0.5, CarCost::kDesiredSpeed);
      break;
    }
  }
  return x;
}

Eigen::VectorXd MpcInitialState(const TaskInstance& task) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(task.dynamics->state_dim());
  switch (task.task) {
    case Task::kPendulum:
    case Task::kHovercraft:
      break;
    case Task::kQuadrotor: {
      const auto& quad = static_cast<const QuadrotorDynamics&>(*task.dynamics);
      x[QuadrotorDynamics::kQw] = 1.0;
      x.segment<4>(QuadrotorDynamics::kRotor1).setConstant(
          quad.HoverRotorSpeed());
      break;
    }
    case Task::kCar:
      x[CarDynamics::kX] = 2.0;
      x[CarDynamics::kYaw] = kPi / 2.0;
      break;
  }
  return x;
}

std::unique_ptr<TaskScheduler> MakeScheduler(TaskInstance& task,
                                             std::uint64_t seed) {
  const std::uint64_t waypoint_seed = DeriveSeed(seed, kWaypointStream);
  const Eigen::VectorXd start = MpcInitialState(task);
  switch (task.task) {
    case Task::kPendulum:
      return std::make_unique<UprightScheduler>();
    case Task::kHovercraft:
      return std::make_unique<HovercraftWaypointScheduler>(
          static_cast<HovercraftCost&>(*task.cost), 0.2, waypoint_seed,
          Eigen::Vector2d(start[HovercraftDynamics::kX],
                          start[HovercraftDynamics::kY]));
    case Task::kQuadrotor:
      return std::make_unique<QuadrotorWaypointScheduler>(
          static_cast<QuadrotorCost&>(*task.cost), 0.3, waypoint_seed,
          start.segment<3>(QuadrotorDynamics::kPx));
    case Task::kCar:
      return std::make_unique<LapScheduler>();
  }
  return nullptr;
}

}  // namespace pintegra
