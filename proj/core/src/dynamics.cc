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

#include "pintegra/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pintegra/error.h"

namespace pintegra {

double WrapAngle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

Eigen::VectorXd DynamicsModel::Step(const Eigen::VectorXd& state,
                                    const Eigen::VectorXd& control) const {
  Eigen::VectorXd clamped = control;
  ClampControl({clamped.data(), static_cast<std::size_t>(clamped.size())});
  Eigen::VectorXd next(state_dim());
  Step({state.data(), static_cast<std::size_t>(state.size())},
       {clamped.data(), static_cast<std::size_t>(clamped.size())},
       {next.data(), static_cast<std::size_t>(next.size())});
  return next;
}

Eigen::VectorXd DynamicsModel::StateDifference(const Eigen::VectorXd& a,
                                               const Eigen::VectorXd& b) const {
  Eigen::VectorXd d = a - b;
  for (int i : angle_indices()) d[i] = WrapAngle(d[i]);
  return d;
}

namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

void RequireRange(double lo, double hi, const char* name) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError(std::string(name) + " range must satisfy min < max");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Pendulum

PendulumDynamics::PendulumDynamics(PendulumParams params) : params_(params) {
  RequirePositive(params_.mass, "pendulum mass");
  RequirePositive(params_.length, "pendulum length");
  RequirePositive(params_.gravity, "pendulum gravity");
  RequirePositive(params_.dt, "pendulum dt");
  if (!(params_.damping >= 0.0)) {
    throw ConfigError("pendulum damping must be non-negative");
  }
}

std::span<const int> PendulumDynamics::angle_indices() const {
  static constexpr int kAngles[] = {kTheta};
  return kAngles;
}

void PendulumDynamics::Step(std::span<const double> state,
                            std::span<const double> control,
                            std::span<double> next) const {
  const auto& p = params_;
  const double theta = state[kTheta];
  const double theta_dot = state[kThetaDot];
  const double inertia = p.mass * p.length * p.length;
  const double accel = (-p.damping * theta_dot -
                        p.mass * p.gravity * p.length * std::sin(theta) +
                        control[0]) /
                       inertia;
  next[kTheta] = WrapAngle(theta + p.dt * theta_dot);
  next[kThetaDot] = theta_dot + p.dt * accel;
}

// ---------------------------------------------------------------------------
// Hovercraft

HovercraftDynamics::HovercraftDynamics(HovercraftParams params)
    : params_(params) {
  RequirePositive(params_.mass, "hovercraft mass");
  RequirePositive(params_.inertia, "hovercraft inertia");
  RequirePositive(params_.thrust_lag, "hovercraft thrust_lag");
  RequirePositive(params_.dt, "hovercraft dt");
  RequireRange(params_.min_thrust, params_.max_thrust, "hovercraft thrust");
  if (params_.dt > params_.thrust_lag) {
    throw ConfigError("hovercraft dt must not exceed thrust_lag");
  }
}

void HovercraftDynamics::ClampControl(std::span<double> control) const {
  for (double& f : control) {
    f = std::clamp(f, params_.min_thrust, params_.max_thrust);
  }
}

std::span<const int> HovercraftDynamics::angle_indices() const {
  static constexpr int kAngles[] = {kTheta};
  return kAngles;
}

void HovercraftDynamics::Step(std::span<const double> s,
                              std::span<const double> u,
                              std::span<double> next) const {
  const auto& p = params_;
  const double c = std::cos(s[kTheta]);
  const double sn = std::sin(s[kTheta]);
  const double thrust = s[kF1] + s[kF2];
  const double ax = (thrust * c - p.linear_drag * s[kVx]) / p.mass;
  const double ay = (thrust * sn - p.linear_drag * s[kVy]) / p.mass;
  const double alpha = (p.thruster_offset * (s[kF2] - s[kF1]) -
                        p.angular_drag * s[kOmega]) /
                       p.inertia;
  const double lag = p.dt / p.thrust_lag;

  next[kX] = s[kX] + p.dt * s[kVx];
  next[kY] = s[kY] + p.dt * s[kVy];
  next[kTheta] = WrapAngle(s[kTheta] + p.dt * s[kOmega]);
  next[kVx] = s[kVx] + p.dt * ax;
  next[kVy] = s[kVy] + p.dt * ay;
  next[kOmega] = s[kOmega] + p.dt * alpha;
  next[kF1] = s[kF1] + lag * (u[0] - s[kF1]);
  next[kF2] = s[kF2] + lag * (u[1] - s[kF2]);
}

// ---------------------------------------------------------------------------
// Quadrotor

QuadrotorDynamics::QuadrotorDynamics(QuadrotorParams params)
    : params_(params) {
  RequirePositive(params_.mass, "quadrotor mass");
  RequirePositive(params_.arm_length, "quadrotor arm_length");
  RequirePositive(params_.inertia_xx, "quadrotor inertia_xx");
  RequirePositive(params_.inertia_yy, "quadrotor inertia_yy");
  RequirePositive(params_.inertia_zz, "quadrotor inertia_zz");
  RequirePositive(params_.thrust_coefficient, "quadrotor thrust_coefficient");
  RequirePositive(params_.moment_coefficient, "quadrotor moment_coefficient");
  RequirePositive(params_.gravity, "quadrotor gravity");
  RequirePositive(params_.rotor_lag, "quadrotor rotor_lag");
  RequirePositive(params_.dt, "quadrotor dt");
  RequireRange(params_.min_rotor_speed, params_.max_rotor_speed,
               "quadrotor rotor speed");
  if (params_.substeps < 1) {
    throw ConfigError("quadrotor substeps must be at least 1");
  }
  if (params_.dt / params_.substeps > params_.rotor_lag) {
    throw ConfigError("quadrotor substep must not exceed rotor_lag");
  }
}

double QuadrotorDynamics::HoverRotorSpeed() const {
  return std::sqrt(params_.mass * params_.gravity /
                   (4.0 * params_.thrust_coefficient));
}

void QuadrotorDynamics::ClampControl(std::span<double> control) const {
  for (double& w : control) {
    w = std::clamp(w, params_.min_rotor_speed, params_.max_rotor_speed);
  }
}

void QuadrotorDynamics::Step(std::span<const double> state,
                             std::span<const double> u,
                             std::span<double> next) const {
  const auto& p = params_;
  const double h = p.dt / p.substeps;
  double s[kStateDim];
  std::copy(state.begin(), state.begin() + kStateDim, s);

  for (int sub = 0; sub < p.substeps; ++sub) {
    double f[4];
    double moment_sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double omega_sq = s[kRotor1 + i] * s[kRotor1 + i];
      f[i] = p.thrust_coefficient * omega_sq;
      // Rotors 1 and 3 spin opposite to 2 and 4.
      moment_sum += (i % 2 == 0 ? 1.0 : -1.0) * omega_sq;
    }
    const double thrust = f[0] + f[1] + f[2] + f[3];
    const double qw = s[kQw], qx = s[kQx], qy = s[kQy], qz = s[kQz];
    // Third column of R(q): body z expressed in the world frame.
    const double zx = 2.0 * (qx * qz + qw * qy);
    const double zy = 2.0 * (qy * qz - qw * qx);
    const double zz = 1.0 - 2.0 * (qx * qx + qy * qy);

    const double ax = thrust * zx / p.mass - p.linear_drag * s[kVx] / p.mass;
    const double ay = thrust * zy / p.mass - p.linear_drag * s[kVy] / p.mass;
    const double az = thrust * zz / p.mass - p.gravity -
                      p.linear_drag * s[kVz] / p.mass;

    const double wx = s[kWx], wy = s[kWy], wz = s[kWz];
    const double tau_x = p.arm_length * (f[1] - f[3]);
    const double tau_y = p.arm_length * (f[2] - f[0]);
    const double tau_z = p.moment_coefficient * moment_sum;
    // J w' = tau - w x (J w)
    const double dwx =
        (tau_x - (wy * p.inertia_zz * wz - wz * p.inertia_yy * wy)) /
        p.inertia_xx;
    const double dwy =
        (tau_y - (wz * p.inertia_xx * wx - wx * p.inertia_zz * wz)) /
        p.inertia_yy;
    const double dwz =
        (tau_z - (wx * p.inertia_yy * wy - wy * p.inertia_xx * wx)) /
        p.inertia_zz;

    // q' = q (x) (0, w) / 2
    const double dqw = -0.5 * (qx * wx + qy * wy + qz * wz);
    const double dqx = 0.5 * (qw * wx + qy * wz - qz * wy);
    const double dqy = 0.5 * (qw * wy + qz * wx - qx * wz);
    const double dqz = 0.5 * (qw * wz + qx * wy - qy * wx);

    s[kPx] += h * s[kVx];
    s[kPy] += h * s[kVy];
    s[kPz] += h * s[kVz];
    s[kVx] += h * ax;
    s[kVy] += h * ay;
    s[kVz] += h * az;
    s[kQw] += h * dqw;
    s[kQx] += h * dqx;
    s[kQy] += h * dqy;
    s[kQz] += h * dqz;
    const double norm = std::sqrt(s[kQw] * s[kQw] + s[kQx] * s[kQx] +
                                  s[kQy] * s[kQy] + s[kQz] * s[kQz]);
    s[kQw] /= norm;
    s[kQx] /= norm;
    s[kQy] /= norm;
    s[kQz] /= norm;
    s[kWx] += h * dwx;
    s[kWy] += h * dwy;
    s[kWz] += h * dwz;
    const double lag = h / p.rotor_lag;
    for (int i = 0; i < 4; ++i) {
      s[kRotor1 + i] += lag * (u[i] - s[kRotor1 + i]);
    }
  }
  std::copy(s, s + kStateDim, next.begin());
}

// ---------------------------------------------------------------------------
// Car

CarDynamics::CarDynamics(CarParams params) : params_(params) {
  RequirePositive(params_.mass, "car mass");
  RequirePositive(params_.yaw_inertia, "car yaw_inertia");
  RequirePositive(params_.front_axle, "car front_axle");
  RequirePositive(params_.rear_axle, "car rear_axle");
  RequirePositive(params_.front_cornering_stiffness,
                  "car front_cornering_stiffness");
  RequirePositive(params_.rear_cornering_stiffness,
                  "car rear_cornering_stiffness");
  RequirePositive(params_.min_slip_speed, "car min_slip_speed");
  RequirePositive(params_.steer_lag, "car steer_lag");
  RequirePositive(params_.force_lag, "car force_lag");
  RequirePositive(params_.max_steer, "car max_steer");
  RequirePositive(params_.dt, "car dt");
  RequireRange(params_.min_force, params_.max_force, "car force");
  if (params_.substeps < 1) throw ConfigError("car substeps must be >= 1");
  const double h = params_.dt / params_.substeps;
  if (h > params_.steer_lag || h > params_.force_lag) {
    throw ConfigError("car substep must not exceed the actuator lags");
  }
}

void CarDynamics::ClampControl(std::span<double> control) const {
  control[0] = std::clamp(control[0], -params_.max_steer, params_.max_steer);
  control[1] = std::clamp(control[1], params_.min_force, params_.max_force);
}

std::span<const int> CarDynamics::angle_indices() const {
  static constexpr int kAngles[] = {kYaw};
  return kAngles;
}

void CarDynamics::Step(std::span<const double> state,
                       std::span<const double> u,
                       std::span<double> next) const {
  const auto& p = params_;
  const double h = p.dt / p.substeps;
  double s[kStateDim];
  std::copy(state.begin(), state.begin() + kStateDim, s);

  for (int sub = 0; sub < p.substeps; ++sub) {
    const double vx = s[kVx], vy = s[kVy], r = s[kYawRate];
    const double steer = s[kSteer];
    const double slip_speed = std::max(vx, p.min_slip_speed);
    const double alpha_f =
        steer - std::atan2(vy + p.front_axle * r, slip_speed);
    const double alpha_r = -std::atan2(vy - p.rear_axle * r, slip_speed);
    const double fy_f = p.front_cornering_stiffness * alpha_f;
    const double fy_r = p.rear_cornering_stiffness * alpha_r;
    const double cs = std::cos(steer), ss = std::sin(steer);

    const double dvx =
        (s[kForce] - fy_f * ss - p.rolling_drag * vx) / p.mass + vy * r;
    const double dvy = (fy_r + fy_f * cs) / p.mass - vx * r;
    const double dr =
        (p.front_axle * fy_f * cs - p.rear_axle * fy_r) / p.yaw_inertia;
    const double cy = std::cos(s[kYaw]), sy = std::sin(s[kYaw]);

    s[kX] += h * (vx * cy - vy * sy);
    s[kY] += h * (vx * sy + vy * cy);
    s[kYaw] = WrapAngle(s[kYaw] + h * r);
    s[kVx] += h * dvx;
    s[kVy] += h * dvy;
    s[kYawRate] += h * dr;
    s[kSteer] += h / p.steer_lag * (u[0] - s[kSteer]);
    s[kForce] += h / p.force_lag * (u[1] - s[kForce]);
  }
  std::copy(s, s + kStateDim, next.begin());
}

}  // namespace pintegra
