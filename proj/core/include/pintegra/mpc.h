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

#ifndef PINTEGRA_MPC_H_
#define PINTEGRA_MPC_H_

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "pintegra/config.h"
#include "pintegra/costs.h"
#include "pintegra/dynamics.h"
#include "pintegra/optimizer.h"

namespace pintegra {

class ThreadPool;

// Decides when the task at hand is completed and retargets the cost.
class TaskScheduler {
 public:
  virtual ~TaskScheduler() = default;

  // Called with the plant state after every control step. Returns true when
  // a task completion happened at this step.
  virtual bool Update(const Eigen::VectorXd& state, double time) = 0;
  // Current goal, logged for auditing. Empty when the task has none.
  virtual Eigen::VectorXd target() const { return {}; }
};

// Draws targets uniformly from a box, each at least min_separation away
// from the previous one, from a stream that depends only on seed.
class WaypointSequence {
 public:
  WaypointSequence(Eigen::VectorXd lower, Eigen::VectorXd upper,
                   double min_separation, std::uint64_t seed,
                   Eigen::VectorXd start);

  const Eigen::VectorXd& current() const { return current_; }
  const Eigen::VectorXd& Next();

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  double min_separation_;
  std::mt19937_64 engine_;
  Eigen::VectorXd current_;
};

// Hovercraft: complete on entering radius around the target, then move the
// cost's target to the next waypoint.
class HovercraftWaypointScheduler final : public TaskScheduler {
 public:
  HovercraftWaypointScheduler(HovercraftCost& cost, double radius,
                              std::uint64_t seed,
                              const Eigen::Vector2d& start);
  bool Update(const Eigen::VectorXd& state, double time) override;
  Eigen::VectorXd target() const override { return waypoints_.current(); }

 private:
  HovercraftCost& cost_;
  double radius_;
  WaypointSequence waypoints_;
};

class QuadrotorWaypointScheduler final : public TaskScheduler {
 public:
  QuadrotorWaypointScheduler(QuadrotorCost& cost, double radius,
                             std::uint64_t seed,
                             const Eigen::Vector3d& start);
  bool Update(const Eigen::VectorXd& state, double time) override;
  Eigen::VectorXd target() const override { return waypoints_.current(); }

 private:
  QuadrotorCost& cost_;
  double radius_;
  WaypointSequence waypoints_;
};

// Car: one completion per crossing of y = 0 from below with x inside
// [line_min_x, line_max_x] and positive body speed.
class LapScheduler final : public TaskScheduler {
 public:
  explicit LapScheduler(double line_min_x = 1.5, double line_max_x = 2.5);
  bool Update(const Eigen::VectorXd& state, double time) override;

 private:
  double line_min_x_;
  double line_max_x_;
  bool has_previous_ = false;
  double previous_y_ = 0.0;
};

// Pendulum: a single completion once |theta - pi| < tolerance has held for
// hold_time seconds.
class UprightScheduler final : public TaskScheduler {
 public:
  explicit UprightScheduler(double tolerance = 0.1, double hold_time = 1.0);
  bool Update(const Eigen::VectorXd& state, double time) override;

 private:
  double tolerance_;
  double hold_time_;
  double upright_since_ = -1.0;
  bool done_ = false;
};

struct MpcConfig {
  // num_iterations() is the number of updates U per control step (>= 1).
  PathIntegralConfig optimizer;
  double sim_duration = 0.0;
  int horizon = 0;

  // Throws ConfigError unless U >= 1, sim_duration >= 0 and horizon >= 1.
  void Validate() const;
};

struct MpcStepRecord {
  double time = 0.0;            // after the step
  Eigen::VectorXd state;        // plant state after the step
  Eigen::VectorXd control;      // applied (clamped) command
  double running_cost = 0.0;    // q of the state after the step
  int completions = 0;
  Eigen::VectorXd target;       // goal pursued during the step
  bool failed = false;          // optimizer failed, previous command held
};

struct MpcSummary {
  int steps = 0;
  int completions = 0;
  int failed_steps = 0;
  // Over completed tasks only; NaN when there were none.
  double mean_time_to_completion = 0.0;
  double mean_cost_to_completion = 0.0;
  double total_cost = 0.0;
};

struct MpcLog {
  std::vector<MpcStepRecord> steps;
  // Duration and accumulated running cost of every completed task.
  std::vector<double> completion_durations;
  std::vector<double> completion_costs;
  MpcSummary summary;
};

// One receding-horizon step: U updates from state, then the shift.
struct MpcStepResult {
  Eigen::VectorXd control;  // mu_0 before shifting, or the held command
  OptimizerState state;     // shifted plan for the next step
  bool failed = false;
};

// Drops the first column of every plan-shaped entry and repeats the last.
OptimizerState ShiftPlan(const OptimizerState& state);

// Runs U updates with the noise of iteration j seeded by
// DeriveSeed(step_seed, j), reads mu_0 and shifts. If all rollouts diverge
// the previous command is returned and the step flagged.
MpcStepResult MpcStep(PathIntegralOptimizer& optimizer,
                      const Eigen::VectorXd& x, const OptimizerState& state,
                      std::uint64_t step_seed,
                      const Eigen::VectorXd& previous_control);

// Closed-loop simulation for sim_duration seconds, one plant step per
// control step. Step i uses DeriveSeed(config.optimizer.seed(), i).
// scheduler may be null.
MpcLog RunMpc(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
              const CostModel& cost, TaskScheduler* scheduler,
              const MpcConfig& config, ThreadPool* pool = nullptr);

}  // namespace pintegra

#endif  // PINTEGRA_MPC_H_
