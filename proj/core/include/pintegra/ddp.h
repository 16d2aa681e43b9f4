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

#ifndef PINTEGRA_DDP_H_
#define PINTEGRA_DDP_H_

#include <vector>

#include <Eigen/Core>

#include "pintegra/costs.h"
#include "pintegra/dynamics.h"

namespace pintegra {

struct DdpConfig {
  int max_iterations = 200;
  // Stop once an accepted step improves the cost by less than this fraction.
  double convergence_tol = 1e-7;
  double regularization_init = 1e-6;
  double regularization_min = 1e-9;
  double regularization_max = 1e10;
  int line_search_steps = 12;
  double fd_epsilon = 1e-5;
  // Step of the second-difference cost Hessian.
  double hessian_epsilon = 1e-4;

  // Throws ConfigError if any field is out of range.
  void Validate() const;
};

// Local model around one nominal (x_t, u_t):
//   x' ~ A dx + B du,  l ~ lx'dx + lu'du + 1/2 [dx du]' H [dx du].
struct StepExpansion {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::VectorXd lx;
  Eigen::VectorXd lu;
  Eigen::MatrixXd lxx;
  Eigen::MatrixXd luu;
  Eigen::MatrixXd lux;
};

struct TrajectoryExpansion {
  std::vector<StepExpansion> steps;  // t = 0..T-1
  Eigen::VectorXd terminal_lx;
  Eigen::MatrixXd terminal_lxx;
};

// Central-difference expansion of dynamics and cost along (states, controls)
// with states n x (T+1) and controls m x T. State Hessians are projected onto
// the positive semi-definite cone. Throws DerivativeError on non-finite
// derivatives.
TrajectoryExpansion Linearize(const DynamicsModel& dynamics,
                              const CostModel& cost,
                              const Eigen::MatrixXd& states,
                              const Eigen::MatrixXd& controls,
                              const DdpConfig& config);

struct BackwardPassResult {
  bool success = false;
  // u_t = u_bar_t + alpha k_t + K_t (x_t - x_bar_t).
  std::vector<Eigen::MatrixXd> feedback;
  std::vector<Eigen::VectorXd> feedforward;
  // Predicted change for step alpha: alpha d1 + alpha^2 d2 (negative).
  double d1 = 0.0;
  double d2 = 0.0;

  double ExpectedChange(double alpha) const {
    return alpha * d1 + alpha * alpha * d2;
  }
};

// Riccati recursion with regularization added to Q_uu. Fails (success =
// false) when a regularized Q_uu is not positive-definite.
BackwardPassResult BackwardPass(const TrajectoryExpansion& expansion,
                                double regularization);

struct DdpResult {
  Eigen::MatrixXd controls;
  // Noise-free S_x + S_u of the initial plan and of every accepted iterate.
  std::vector<double> cost_history;
  int accepted_iterations = 0;
  int iterations = 0;
  bool converged = false;
  // Backward pass or derivatives failed persistently; controls is the best
  // iterate found.
  bool degraded = false;

  double final_cost() const { return cost_history.back(); }
};

// iLQG from initial_controls (m x T). Deterministic.
DdpResult SolveDdp(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
                   const CostModel& cost,
                   const Eigen::MatrixXd& initial_controls,
                   const DdpConfig& config = {});

}  // namespace pintegra

#endif  // PINTEGRA_DDP_H_
