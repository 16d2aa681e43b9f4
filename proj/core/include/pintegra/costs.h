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

#ifndef PINTEGRA_COSTS_H_
#define PINTEGRA_COSTS_H_

#include <span>

#include <Eigen/Core>

#include "pintegra/config.h"

namespace pintegra {

// Running cost q(x), terminal cost phi(x) = q(x), and the control weight R of
// S(tau) = phi(x_T) + sum_t q(x_t) + sum_t u_t' R u_t.
class CostModel {
 public:
  virtual ~CostModel() = default;

  virtual double RunningCost(std::span<const double> state) const = 0;
  double TerminalCost(std::span<const double> state) const {
    return RunningCost(state);
  }
  virtual const Eigen::MatrixXd& control_weight() const = 0;
};

// sqrt(x^2 + w^2) - w.
double PseudoHuber(double x, double w);

// q = (1 + cos theta)^2 + theta'^2, R = 5.
class PendulumCost final : public CostModel {
 public:
  PendulumCost();
  double RunningCost(std::span<const double> state) const override;
  const Eigen::MatrixXd& control_weight() const override { return r_; }

 private:
  Eigen::MatrixXd r_;
};

struct HovercraftCostWeights {
  double distance = 1e-6;
  double speed = 1e-2;
  double heading = 1.0;
  double thrust = 0.2;
};

// q = h(d, w_d) + h(v, w_v) + h(cos(theta_d) - 1, w_theta)
//     + w_F (F1^2 + F2^2), R = 0.
// d is the planar distance to the target, v the planar speed and theta_d the
// angle between the heading and the bearing to the target (zero at the
// target itself).
class HovercraftCost final : public CostModel {
 public:
  explicit HovercraftCost(HovercraftCostWeights weights = {});
  double RunningCost(std::span<const double> state) const override;
  const Eigen::MatrixXd& control_weight() const override { return r_; }

  void set_target(const Eigen::Vector2d& target) { target_ = target; }
  const Eigen::Vector2d& target() const { return target_; }

 private:
  HovercraftCostWeights weights_;
  Eigen::Vector2d target_ = Eigen::Vector2d::Zero();
  Eigen::MatrixXd r_;
};

struct QuadrotorCostWeights {
  double position = 50.0;
  double velocity = 10.0;
  double orientation = 200.0;
  double angular_velocity = 1e-3;
  double rotor_speed = 1e-6;
};

// q = sum_i h(dp_i, w_p) + w_v |v|^2 + w_q |dq| + w_w |omega| + w_O |Omega|,
// R = 0. |dq| is the norm of the vector part of q_target^-1 * q, where
// q_target is level at the target yaw. Norms are Euclidean.
class QuadrotorCost final : public CostModel {
 public:
  explicit QuadrotorCost(QuadrotorCostWeights weights = {});
  double RunningCost(std::span<const double> state) const override;
  const Eigen::MatrixXd& control_weight() const override { return r_; }

  void set_target(const Eigen::Vector3d& position, double yaw = 0.0);
  const Eigen::Vector3d& target() const { return target_; }
  double target_yaw() const { return target_yaw_; }

 private:
  QuadrotorCostWeights weights_;
  Eigen::Vector3d target_ = Eigen::Vector3d::Zero();
  double target_yaw_ = 0.0;
  // (w, x, y, z) of the conjugate target orientation.
  double inv_target_w_ = 1.0;
  double inv_target_z_ = 0.0;
  Eigen::MatrixXd r_;
};

// q = 100 ((x / 2)^2 + y^2 - 1)^2 + (v_x - 1.25)^2, R = 0, with v_x the
// body-frame forward speed.
class CarCost final : public CostModel {
 public:
  CarCost();
  double RunningCost(std::span<const double> state) const override;
  const Eigen::MatrixXd& control_weight() const override { return r_; }

  static constexpr double kDesiredSpeed = 1.25;

 private:
  Eigen::MatrixXd r_;
};

struct TrajectoryCosts {
  double state_cost = 0.0;          // S_x
  double control_cost = 0.0;        // S_u
  double control_correction = 0.0;  // noise term of the weight exponent
  double modified_cost = 0.0;       // S_x + control_correction

  double total() const { return state_cost + control_cost; }
};

// The per-timestep bilinear form that turns a rollout's noise into the
// control_correction term of its weight exponent.
struct ControlCorrection {
  WeightExponent exponent = WeightExponent::kModifiedCost;
  Eigen::MatrixXd matrix;

  // lambda Sigma^-1 / 2, lambda Sigma^-1 or the task's R, per exponent.
  static ControlCorrection For(const PathIntegralConfig& config,
                               const CostModel& cost);

  // sum_t nu_t' M eps_t, or sum_t u_t' M u_t for kTrajectoryCost.
  double Evaluate(const Eigen::MatrixXd& sampling_mean,
                  const Eigen::MatrixXd& noise,
                  const Eigen::MatrixXd& controls) const;
};

// S_x = phi(x_T) + sum_{t<T} q(x_t) over the (n x T+1) state columns.
double StateCost(const CostModel& cost, const Eigen::MatrixXd& states);
// S_u = sum_t u_t' R u_t over the (m x T) control columns.
double ControlCost(const CostModel& cost, const Eigen::MatrixXd& controls);

// All costs of one trajectory.
TrajectoryCosts EvaluateTrajectoryCost(const CostModel& cost,
                                       const Eigen::MatrixXd& states,
                                       const Eigen::MatrixXd& controls,
                                       const Eigen::MatrixXd& sampling_mean,
                                       const Eigen::MatrixXd& noise,
                                       const ControlCorrection& correction);

}  // namespace pintegra

#endif  // PINTEGRA_COSTS_H_
