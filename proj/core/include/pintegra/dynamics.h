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

#ifndef PINTEGRA_DYNAMICS_H_
#define PINTEGRA_DYNAMICS_H_

#include <span>
#include <string_view>

#include <Eigen/Core>

namespace pintegra {

// Discrete-time plant x_{t+1} = f(x_t, u_t). Implementations are pure and
// safe to call concurrently.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual std::string_view name() const = 0;
  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual double time_step() const = 0;

  // Clamps a command to the actuator limits in place. Step() expects an
  // already clamped command.
  virtual void ClampControl(std::span<double> control) const { (void)control; }

  // Writes f(state, control) to next. next must not alias state.
  virtual void Step(std::span<const double> state,
                    std::span<const double> control,
                    std::span<double> next) const = 0;

  // Clamps a copy of the control and steps once.
  Eigen::VectorXd Step(const Eigen::VectorXd& state,
                       const Eigen::VectorXd& control) const;

  // State entries that are angles wrapped to (-pi, pi].
  virtual std::span<const int> angle_indices() const { return {}; }

  // a - b with angle entries wrapped.
  Eigen::VectorXd StateDifference(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b) const;
};

// Point mass on a massless rod, theta = 0 hanging down.
//   m l^2 theta'' = -b theta' - m g l sin(theta) + u
struct PendulumParams {
  double mass = 0.05;
  double length = 1.0;
  double damping = 0.005;
  double gravity = 9.8;
  double dt = 0.02;
};

class PendulumDynamics final : public DynamicsModel {
 public:
  enum StateIndex { kTheta, kThetaDot, kStateDim };

  explicit PendulumDynamics(PendulumParams params = {});

  std::string_view name() const override { return "pendulum"; }
  int state_dim() const override { return kStateDim; }
  int control_dim() const override { return 1; }
  double time_step() const override { return params_.dt; }
  std::span<const int> angle_indices() const override;
  using DynamicsModel::Step;
  void Step(std::span<const double> state, std::span<const double> control,
            std::span<double> next) const override;

  const PendulumParams& params() const { return params_; }

 private:
  PendulumParams params_;
};

// Planar rigid body with two forward-facing thrusters mounted at +/- offset
// from the centre line. Positive F2 - F1 yaws left.
struct HovercraftParams {
  double mass = 0.8;
  double inertia = 0.02;
  double thruster_offset = 0.1;
  double linear_drag = 0.3;
  double angular_drag = 0.02;
  double thrust_lag = 0.2;
  double min_thrust = -1.0;
  double max_thrust = 1.0;
  double dt = 0.1;
};

class HovercraftDynamics final : public DynamicsModel {
 public:
  enum StateIndex { kX, kY, kTheta, kVx, kVy, kOmega, kF1, kF2, kStateDim };

  explicit HovercraftDynamics(HovercraftParams params = {});

  std::string_view name() const override { return "hovercraft"; }
  int state_dim() const override { return kStateDim; }
  int control_dim() const override { return 2; }
  double time_step() const override { return params_.dt; }
  void ClampControl(std::span<double> control) const override;
  std::span<const int> angle_indices() const override;
  using DynamicsModel::Step;
  void Step(std::span<const double> state, std::span<const double> control,
            std::span<double> next) const override;

  const HovercraftParams& params() const { return params_; }

 private:
  HovercraftParams params_;
};

// Plus-configuration quadrotor. Rotor i produces thrust k_f Omega_i^2 along
// body z and drag moment k_m Omega_i^2 about it; rotor speeds in rpm.
// Rotors 1 and 3 lie on the body x axis, 2 and 4 on the body y axis.
struct QuadrotorParams {
  double mass = 0.5;
  double arm_length = 0.175;
  double inertia_xx = 2.32e-3;
  double inertia_yy = 2.32e-3;
  double inertia_zz = 4.0e-3;
  double thrust_coefficient = 6.11e-8;
  double moment_coefficient = 1.5e-9;
  double linear_drag = 0.1;
  double gravity = 9.81;
  double rotor_lag = 0.05;
  double min_rotor_speed = 1200.0;
  double max_rotor_speed = 7800.0;
  double dt = 0.05;
  int substeps = 5;
};

class QuadrotorDynamics final : public DynamicsModel {
 public:
  enum StateIndex {
    kPx, kPy, kPz,
    kVx, kVy, kVz,
    kQw, kQx, kQy, kQz,
    kWx, kWy, kWz,
    kRotor1, kRotor2, kRotor3, kRotor4,
    kStateDim
  };

  explicit QuadrotorDynamics(QuadrotorParams params = {});

  std::string_view name() const override { return "quadrotor"; }
  int state_dim() const override { return kStateDim; }
  int control_dim() const override { return 4; }
  double time_step() const override { return params_.dt; }
  void ClampControl(std::span<double> control) const override;
  using DynamicsModel::Step;
  void Step(std::span<const double> state, std::span<const double> control,
            std::span<double> next) const override;

  // Rotor speed at which total thrust balances gravity.
  double HoverRotorSpeed() const;
  const QuadrotorParams& params() const { return params_; }

 private:
  QuadrotorParams params_;
};

// Dynamic bicycle model with linear tyres and a rear-wheel drive force.
// Slip angles use max(vx, min_slip_speed) to stay defined at standstill.
struct CarParams {
  double mass = 2.0;
  double yaw_inertia = 0.04;
  double front_axle = 0.12;
  double rear_axle = 0.13;
  double front_cornering_stiffness = 20.0;
  double rear_cornering_stiffness = 25.0;
  double rolling_drag = 0.3;
  double min_slip_speed = 0.5;
  double steer_lag = 0.1;
  double force_lag = 0.1;
  double max_steer = 0.6;
  double min_force = -3.0;
  double max_force = 3.0;
  double dt = 0.05;
  int substeps = 5;
};

class CarDynamics final : public DynamicsModel {
 public:
  enum StateIndex { kX, kY, kYaw, kVx, kVy, kYawRate, kSteer, kForce,
                    kStateDim };

  explicit CarDynamics(CarParams params = {});

  std::string_view name() const override { return "car"; }
  int state_dim() const override { return kStateDim; }
  int control_dim() const override { return 2; }
  double time_step() const override { return params_.dt; }
  void ClampControl(std::span<double> control) const override;
  std::span<const int> angle_indices() const override;
  using DynamicsModel::Step;
  void Step(std::span<const double> state, std::span<const double> control,
            std::span<double> next) const override;

  const CarParams& params() const { return params_; }

 private:
  CarParams params_;
};

// Wraps an angle to (-pi, pi].
double WrapAngle(double angle);

}  // namespace pintegra

#endif  // PINTEGRA_DYNAMICS_H_
