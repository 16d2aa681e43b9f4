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

#include "pintegra/costs.h"

#include <cmath>

#include "pintegra/dynamics.h"

namespace pintegra {

double PseudoHuber(double x, double w) { return std::hypot(x, w) - w; }

PendulumCost::PendulumCost() : r_(Eigen::MatrixXd::Constant(1, 1, 5.0)) {}

double PendulumCost::RunningCost(std::span<const double> s) const {
  const double a = 1.0 + std::cos(s[PendulumDynamics::kTheta]);
  const double w = s[PendulumDynamics::kThetaDot];
  return a * a + w * w;
}

HovercraftCost::HovercraftCost(HovercraftCostWeights weights)
    : weights_(weights), r_(Eigen::MatrixXd::Zero(2, 2)) {}

double HovercraftCost::RunningCost(std::span<const double> s) const {
  using H = HovercraftDynamics;
  const double dx = target_.x() - s[H::kX];
  const double dy = target_.y() - s[H::kY];
  const double d = std::hypot(dx, dy);
  const double v = std::hypot(s[H::kVx], s[H::kVy]);
  // Heading error is undefined on top of the target; treat it as aligned.
  double cos_heading = 1.0;
  if (d > 1e-12) {
    cos_heading =
        (std::cos(s[H::kTheta]) * dx + std::sin(s[H::kTheta]) * dy) / d;
  }
  const double f1 = s[H::kF1], f2 = s[H::kF2];
  return PseudoHuber(d, weights_.distance) + PseudoHuber(v, weights_.speed) +
         PseudoHuber(cos_heading - 1.0, weights_.heading) +
         weights_.thrust * (f1 * f1 + f2 * f2);
}

QuadrotorCost::QuadrotorCost(QuadrotorCostWeights weights)
    : weights_(weights), r_(Eigen::MatrixXd::Zero(4, 4)) {}

void QuadrotorCost::set_target(const Eigen::Vector3d& position, double yaw) {
  target_ = position;
  target_yaw_ = yaw;
  inv_target_w_ = std::cos(0.5 * yaw);
  inv_target_z_ = -std::sin(0.5 * yaw);
}

double QuadrotorCost::RunningCost(std::span<const double> s) const {
  using Q = QuadrotorDynamics;
  const double dpx = s[Q::kPx] - target_.x();
  const double dpy = s[Q::kPy] - target_.y();
  const double dpz = s[Q::kPz] - target_.z();
  const double v_sq = s[Q::kVx] * s[Q::kVx] + s[Q::kVy] * s[Q::kVy] +
                      s[Q::kVz] * s[Q::kVz];

  // Vector part of q_target^-1 (x) q with q_target^-1 = (aw, 0, 0, az).
  const double aw = inv_target_w_, az = inv_target_z_;
  const double ex = aw * s[Q::kQx] - az * s[Q::kQy];
  const double ey = aw * s[Q::kQy] + az * s[Q::kQx];
  const double ez = aw * s[Q::kQz] + az * s[Q::kQw];
  const double dq = std::sqrt(ex * ex + ey * ey + ez * ez);

  const double omega = std::sqrt(s[Q::kWx] * s[Q::kWx] +
                                 s[Q::kWy] * s[Q::kWy] +
                                 s[Q::kWz] * s[Q::kWz]);
  double rotor_sq = 0.0;
  for (int i = 0; i < 4; ++i) rotor_sq += s[Q::kRotor1 + i] * s[Q::kRotor1 + i];

  const double wp = weights_.position;
  return PseudoHuber(dpx, wp) + PseudoHuber(dpy, wp) + PseudoHuber(dpz, wp) +
         weights_.velocity * v_sq + weights_.orientation * dq +
         weights_.angular_velocity * omega +
         weights_.rotor_speed * std::sqrt(rotor_sq);
}

CarCost::CarCost() : r_(Eigen::MatrixXd::Zero(2, 2)) {}

double CarCost::RunningCost(std::span<const double> s) const {
  using C = CarDynamics;
  const double x = s[C::kX], y = s[C::kY];
  const double track = 0.25 * x * x + y * y - 1.0;
  const double dv = s[C::kVx] - kDesiredSpeed;
  return 100.0 * track * track + dv * dv;
}

// ---------------------------------------------------------------------------

ControlCorrection ControlCorrection::For(const PathIntegralConfig& config,
                                         const CostModel& cost) {
  ControlCorrection c;
  c.exponent = config.exponent();
  switch (config.exponent()) {
    case WeightExponent::kModifiedCost:
      c.matrix = 0.5 * config.lambda() * config.sigma_inverse();
      break;
    case WeightExponent::kLikelihoodRatio:
      c.matrix = config.lambda() * config.sigma_inverse();
      break;
    case WeightExponent::kTrajectoryCost:
      c.matrix = cost.control_weight();
      break;
  }
  return c;
}

double ControlCorrection::Evaluate(const Eigen::MatrixXd& sampling_mean,
                                   const Eigen::MatrixXd& noise,
                                   const Eigen::MatrixXd& controls) const {
  if (exponent == WeightExponent::kTrajectoryCost) {
    if (matrix.isZero(0.0)) return 0.0;
    return controls.cwiseProduct(matrix * controls).sum();
  }
  return sampling_mean.cwiseProduct(matrix * noise).sum();
}

double StateCost(const CostModel& cost, const Eigen::MatrixXd& states) {
  const int horizon = static_cast<int>(states.cols()) - 1;
  const std::size_t n = static_cast<std::size_t>(states.rows());
  double total = 0.0;
  for (int t = 0; t < horizon; ++t) {
    total += cost.RunningCost({states.col(t).data(), n});
  }
  return total + cost.TerminalCost({states.col(horizon).data(), n});
}

double ControlCost(const CostModel& cost, const Eigen::MatrixXd& controls) {
  const Eigen::MatrixXd& r = cost.control_weight();
  if (r.isZero(0.0)) return 0.0;
  double total = 0.0;
  for (int t = 0; t < controls.cols(); ++t) {
    total += controls.col(t).dot(r * controls.col(t));
  }
  return total;
}

TrajectoryCosts EvaluateTrajectoryCost(const CostModel& cost,
                                       const Eigen::MatrixXd& states,
                                       const Eigen::MatrixXd& controls,
                                       const Eigen::MatrixXd& sampling_mean,
                                       const Eigen::MatrixXd& noise,
                                       const ControlCorrection& correction) {
  TrajectoryCosts out;
  out.state_cost = StateCost(cost, states);
  out.control_cost = ControlCost(cost, controls);
  out.control_correction =
      correction.Evaluate(sampling_mean, noise, controls);
  out.modified_cost = out.state_cost + out.control_correction;
  return out;
}

}  // namespace pintegra
