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

#include "pintegra/mpc.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "pintegra/error.h"
#include "pintegra/noise.h"

namespace pintegra {

WaypointSequence::WaypointSequence(Eigen::VectorXd lower, Eigen::VectorXd upper,
                                   double min_separation, std::uint64_t seed,
                                   Eigen::VectorXd start)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      min_separation_(min_separation),
      engine_(seed),
      current_(std::move(start)) {
  Next();
}

const Eigen::VectorXd& WaypointSequence::Next() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd candidate(lower_.size());
  // Rejection sampling; the box is much larger than the separation.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (Eigen::Index i = 0; i < candidate.size(); ++i) {
      candidate[i] = lower_[i] + (upper_[i] - lower_[i]) * unit(engine_);
    }
    if ((candidate - current_).norm() >= min_separation_) break;
  }
  current_ = candidate;
  return current_;
}

HovercraftWaypointScheduler::HovercraftWaypointScheduler(
    HovercraftCost& cost, double radius, std::uint64_t seed,
    const Eigen::Vector2d& start)
    : cost_(cost),
      radius_(radius),
      waypoints_(Eigen::Vector2d(-2.0, -2.0), Eigen::Vector2d(2.0, 2.0), 1.0,
                 seed, start) {
  cost_.set_target(waypoints_.current());
}

bool HovercraftWaypointScheduler::Update(const Eigen::VectorXd& state,
                                         double /*time*/) {
  const Eigen::Vector2d p(state[HovercraftDynamics::kX],
                          state[HovercraftDynamics::kY]);
  if ((p - cost_.target()).norm() >= radius_) return false;
  cost_.set_target(waypoints_.Next());
  return true;
}

QuadrotorWaypointScheduler::QuadrotorWaypointScheduler(
    QuadrotorCost& cost, double radius, std::uint64_t seed,
    const Eigen::Vector3d& start)
    : cost_(cost),
      radius_(radius),
      waypoints_(Eigen::Vector3d(-2.0, -2.0, -1.0),
                 Eigen::Vector3d(2.0, 2.0, 1.0), 1.0, seed, start) {
  cost_.set_target(waypoints_.current());
}

bool QuadrotorWaypointScheduler::Update(const Eigen::VectorXd& state,
                                        double /*time*/) {
  const Eigen::Vector3d p(state[QuadrotorDynamics::kPx],
                          state[QuadrotorDynamics::kPy],
                          state[QuadrotorDynamics::kPz]);
  if ((p - cost_.target()).norm() >= radius_) return false;
  cost_.set_target(waypoints_.Next());
  return true;
}

LapScheduler::LapScheduler(double line_min_x, double line_max_x)
    : line_min_x_(line_min_x), line_max_x_(line_max_x) {}

bool LapScheduler::Update(const Eigen::VectorXd& state, double /*time*/) {
  const double x = state[CarDynamics::kX];
  const double y = state[CarDynamics::kY];
  const bool crossed = has_previous_ && previous_y_ < 0.0 && y >= 0.0 &&
                       x >= line_min_x_ && x <= line_max_x_ &&
                       state[CarDynamics::kVx] > 0.0;
  has_previous_ = true;
  previous_y_ = y;
  return crossed;
}

UprightScheduler::UprightScheduler(double tolerance, double hold_time)
    : tolerance_(tolerance), hold_time_(hold_time) {}

bool UprightScheduler::Update(const Eigen::VectorXd& state, double time) {
  if (done_) return false;
  const double error =
      std::abs(WrapAngle(state[PendulumDynamics::kTheta] - std::numbers::pi));
  if (error >= tolerance_) {
    upright_since_ = -1.0;
    return false;
  }
  if (upright_since_ < 0.0) upright_since_ = time;
  // Tolerate rounding in the accumulated step times.
  if (time - upright_since_ >= hold_time_ - 1e-9) {
    done_ = true;
    return true;
  }
  return false;
}

void MpcConfig::Validate() const {
  if (optimizer.num_iterations() < 1) {
    throw ConfigError("mpc needs at least one update per control step");
  }
  if (!(sim_duration >= 0.0) || !std::isfinite(sim_duration)) {
    throw ConfigError("sim_duration must be a finite value >= 0");
  }
  if (horizon < 1) throw ConfigError("mpc horizon must be >= 1");
}

namespace {

Eigen::MatrixXd Shift(const Eigen::MatrixXd& m) {
  const Eigen::Index horizon = m.cols();
  Eigen::MatrixXd out(m.rows(), horizon);
  if (horizon > 1) {
    out.leftCols(horizon - 1) = m.rightCols(horizon - 1);
    out.col(horizon - 1) = m.col(horizon - 1);
  } else {
    out = m;
  }
  return out;
}

}  // namespace

OptimizerState ShiftPlan(const OptimizerState& state) {
  OptimizerState out{ControlSequence(Shift(state.mu.values())),
                     Momentum(Shift(state.delta_mu.values())),
                     Shift(state.adagrad_accumulator),
                     Shift(state.adam_first_moment),
                     Shift(state.adam_second_moment),
                     state.iteration};
  return out;
}

MpcStepResult MpcStep(PathIntegralOptimizer& optimizer,
                      const Eigen::VectorXd& x, const OptimizerState& state,
                      std::uint64_t step_seed,
                      const Eigen::VectorXd& previous_control) {
  OptimizerState current = state;
  Eigen::VectorXd control;
  bool failed = false;
  try {
    for (int j = 0; j < optimizer.config().num_iterations(); ++j) {
      const NoiseRealization& noise =
          optimizer.SampleIterationNoise(step_seed, j);
      current = optimizer.Update(x, current, noise);
    }
    control = current.mu.values().col(0);
  } catch (const AllRolloutsDivergedError&) {
    failed = true;
    control = previous_control;
  }
  return {std::move(control), ShiftPlan(current), failed};
}

MpcLog RunMpc(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
              const CostModel& cost, TaskScheduler* scheduler,
              const MpcConfig& config, ThreadPool* pool) {
  config.Validate();
  if (x0.size() != dynamics.state_dim() || !x0.allFinite()) {
    throw ConfigError("mpc initial state must be finite with dimension n");
  }
  const double dt = dynamics.time_step();
  const int num_steps =
      static_cast<int>(std::floor(config.sim_duration / dt + 1e-9));

  PathIntegralOptimizer optimizer(dynamics, cost, config.optimizer,
                                  config.horizon, pool);
  OptimizerState state =
      OptimizerState::Zero(dynamics.control_dim(), config.horizon);
  Eigen::VectorXd x = x0;
  Eigen::VectorXd control = Eigen::VectorXd::Zero(dynamics.control_dim());

  MpcLog log;
  log.steps.reserve(num_steps);
  double segment_start = 0.0;
  double segment_cost = 0.0;
  int completions = 0;
  for (int i = 0; i < num_steps; ++i) {
    MpcStepRecord record;
    record.target = scheduler != nullptr ? scheduler->target()
                                         : Eigen::VectorXd();
    MpcStepResult step = MpcStep(
        optimizer, x, state,
        DeriveSeed(config.optimizer.seed(), static_cast<std::uint64_t>(i)),
        control);
    state = std::move(step.state);
    control = std::move(step.control);
    dynamics.ClampControl(
        {control.data(), static_cast<std::size_t>(control.size())});
    x = dynamics.Step(x, control);
    if (!x.allFinite()) {
      throw std::runtime_error("plant state became non-finite at step " +
                               std::to_string(i));
    }

    record.time = (i + 1) * dt;
    record.state = x;
    record.control = control;
    record.failed = step.failed;
    record.running_cost =
        cost.RunningCost({x.data(), static_cast<std::size_t>(x.size())});
    segment_cost += record.running_cost;
    log.summary.total_cost += record.running_cost;
    if (scheduler != nullptr && scheduler->Update(x, record.time)) {
      ++completions;
      log.completion_durations.push_back(record.time - segment_start);
      log.completion_costs.push_back(segment_cost);
      segment_start = record.time;
      segment_cost = 0.0;
    }
    record.completions = completions;
    if (record.failed) ++log.summary.failed_steps;
    log.steps.push_back(std::move(record));
  }

  log.summary.steps = num_steps;
  log.summary.completions = completions;
  if (completions == 0) {
    log.summary.mean_time_to_completion =
        std::numeric_limits<double>::quiet_NaN();
    log.summary.mean_cost_to_completion =
        std::numeric_limits<double>::quiet_NaN();
  } else {
    double time_sum = 0.0;
    double cost_sum = 0.0;
    for (int c = 0; c < completions; ++c) {
      time_sum += log.completion_durations[c];
      cost_sum += log.completion_costs[c];
    }
    log.summary.mean_time_to_completion = time_sum / completions;
    log.summary.mean_cost_to_completion = cost_sum / completions;
  }
  return log;
}

}  // namespace pintegra
