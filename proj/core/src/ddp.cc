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

#include "pintegra/ddp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "pintegra/error.h"

namespace pintegra {

void DdpConfig::Validate() const {
  if (max_iterations < 0) throw ConfigError("ddp max_iterations must be >= 0");
  if (!(convergence_tol > 0.0)) {
    throw ConfigError("ddp convergence_tol must be positive");
  }
  if (!(regularization_min > 0.0) ||
      !(regularization_min <= regularization_init) ||
      !(regularization_init <= regularization_max)) {
    throw ConfigError("ddp regularization must satisfy 0 < min <= init <= max");
  }
  if (line_search_steps < 1) {
    throw ConfigError("ddp line_search_steps must be >= 1");
  }
  if (!(fd_epsilon > 0.0) || !(hessian_epsilon > 0.0)) {
    throw ConfigError("ddp finite-difference steps must be positive");
  }
}

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

Eigen::VectorXd StepClamped(const DynamicsModel& dynamics,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  return dynamics.Step(x, u);
}

double Q(const CostModel& cost, const Eigen::VectorXd& x) {
  return cost.RunningCost({x.data(), static_cast<std::size_t>(x.size())});
}

Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values.minCoeff() >= 0.0) return h;
  return eig.eigenvectors() * values.cwiseMax(0.0).asDiagonal() *
         eig.eigenvectors().transpose();
}

void CostDerivatives(const CostModel& cost, const Eigen::VectorXd& x,
                     const DdpConfig& config, Eigen::VectorXd& grad,
                     Eigen::MatrixXd& hess) {
  const int n = static_cast<int>(x.size());
  const double h = config.fd_epsilon;
  const double h2 = config.hessian_epsilon;
  grad.resize(n);
  hess.resize(n, n);
  const double q0 = Q(cost, x);
  Eigen::VectorXd xp = x;
  for (int i = 0; i < n; ++i) {
    xp[i] = x[i] + h;
    const double qp = Q(cost, xp);
    xp[i] = x[i] - h;
    const double qm = Q(cost, xp);
    grad[i] = (qp - qm) / (2.0 * h);
    xp[i] = x[i] + h2;
    const double qp2 = Q(cost, xp);
    xp[i] = x[i] - h2;
    const double qm2 = Q(cost, xp);
    xp[i] = x[i];
    hess(i, i) = (qp2 - 2.0 * q0 + qm2) / (h2 * h2);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (int si = -1; si <= 1; si += 2) {
        for (int sj = -1; sj <= 1; sj += 2) {
          xp[i] = x[i] + si * h2;
          xp[j] = x[j] + sj * h2;
          sum += si * sj * Q(cost, xp);
        }
      }
      xp[i] = x[i];
      xp[j] = x[j];
      hess(i, j) = hess(j, i) = sum / (4.0 * h2 * h2);
    }
  }
}

// Simulates the feedback policy around the nominal trajectory. Returns the
// total cost, +inf if any state is non-finite.
double ForwardPass(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
                   const CostModel& cost, const Eigen::MatrixXd& nominal_x,
                   const Eigen::MatrixXd& nominal_u,
                   const BackwardPassResult* policy, double alpha,
                   Eigen::MatrixXd& states, Eigen::MatrixXd& controls) {
  const int horizon = static_cast<int>(nominal_u.cols());
  states.resize(nominal_x.rows(), horizon + 1);
  controls.resize(nominal_u.rows(), horizon);
  states.col(0) = x0;
  for (int t = 0; t < horizon; ++t) {
    Eigen::VectorXd u = nominal_u.col(t);
    if (policy != nullptr) {
      const Eigen::VectorXd dx =
          dynamics.StateDifference(states.col(t), nominal_x.col(t));
      u += alpha * policy->feedforward[t] + policy->feedback[t] * dx;
    }
    dynamics.ClampControl({u.data(), static_cast<std::size_t>(u.size())});
    controls.col(t) = u;
    states.col(t + 1) = StepClamped(dynamics, states.col(t), u);
    if (!states.col(t + 1).allFinite()) return kInfinity;
  }
  const double total = StateCost(cost, states) + ControlCost(cost, controls);
  return std::isfinite(total) ? total : kInfinity;
}

}  // namespace

TrajectoryExpansion Linearize(const DynamicsModel& dynamics,
                              const CostModel& cost,
                              const Eigen::MatrixXd& states,
                              const Eigen::MatrixXd& controls,
                              const DdpConfig& config) {
  const int n = dynamics.state_dim();
  const int m = dynamics.control_dim();
  const int horizon = static_cast<int>(controls.cols());
  if (states.rows() != n || controls.rows() != m ||
      states.cols() != horizon + 1) {
    throw ConfigError("trajectory dimensions do not match the model");
  }
  const double h = config.fd_epsilon;
  const Eigen::MatrixXd& r = cost.control_weight();

  TrajectoryExpansion out;
  out.steps.resize(horizon);
  for (int t = 0; t < horizon; ++t) {
    StepExpansion& e = out.steps[t];
    const Eigen::VectorXd x = states.col(t);
    const Eigen::VectorXd u = controls.col(t);
    e.a.resize(n, n);
    e.b.resize(n, m);
    Eigen::VectorXd xp = x;
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + h;
      const Eigen::VectorXd fp = StepClamped(dynamics, xp, u);
      xp[i] = x[i] - h;
      const Eigen::VectorXd fm = StepClamped(dynamics, xp, u);
      xp[i] = x[i];
      e.a.col(i) = dynamics.StateDifference(fp, fm) / (2.0 * h);
    }
    Eigen::VectorXd up = u;
    for (int i = 0; i < m; ++i) {
      up[i] = u[i] + h;
      const Eigen::VectorXd fp = StepClamped(dynamics, x, up);
      up[i] = u[i] - h;
      const Eigen::VectorXd fm = StepClamped(dynamics, x, up);
      up[i] = u[i];
      e.b.col(i) = dynamics.StateDifference(fp, fm) / (2.0 * h);
    }
    if (!e.a.allFinite() || !e.b.allFinite()) {
      throw DerivativeError("non-finite dynamics derivative", t);
    }
    Eigen::MatrixXd lxx;
    CostDerivatives(cost, x, config, e.lx, lxx);
    if (!e.lx.allFinite() || !lxx.allFinite()) {
      throw DerivativeError("non-finite cost derivative", t);
    }
    e.lxx = ProjectPsd(lxx);
    e.lu = 2.0 * r * u;
    e.luu = 2.0 * r;
    e.lux = Eigen::MatrixXd::Zero(m, n);
  }
  Eigen::MatrixXd lxx;
  CostDerivatives(cost, states.col(horizon), config, out.terminal_lx, lxx);
  if (!out.terminal_lx.allFinite() || !lxx.allFinite()) {
    throw DerivativeError("non-finite cost derivative", horizon);
  }
  out.terminal_lxx = ProjectPsd(lxx);
  return out;
}

BackwardPassResult BackwardPass(const TrajectoryExpansion& expansion,
                                double regularization) {
  const int horizon = static_cast<int>(expansion.steps.size());
  BackwardPassResult out;
  out.feedback.resize(horizon);
  out.feedforward.resize(horizon);
  Eigen::VectorXd vx = expansion.terminal_lx;
  Eigen::MatrixXd vxx = expansion.terminal_lxx;
  for (int t = horizon - 1; t >= 0; --t) {
    const StepExpansion& e = expansion.steps[t];
    const Eigen::VectorXd qx = e.lx + e.a.transpose() * vx;
    const Eigen::VectorXd qu = e.lu + e.b.transpose() * vx;
    const Eigen::MatrixXd vxx_a = vxx * e.a;
    const Eigen::MatrixXd vxx_b = vxx * e.b;
    const Eigen::MatrixXd qxx = e.lxx + e.a.transpose() * vxx_a;
    const Eigen::MatrixXd quu = e.luu + e.b.transpose() * vxx_b;
    const Eigen::MatrixXd qux = e.lux + e.b.transpose() * vxx_a;

    Eigen::MatrixXd quu_reg = quu;
    quu_reg.diagonal().array() += regularization;
    Eigen::LLT<Eigen::MatrixXd> llt(quu_reg);
    if (llt.info() != Eigen::Success) return out;

    const Eigen::VectorXd k = -llt.solve(qu);
    const Eigen::MatrixXd big_k = -llt.solve(qux);
    out.d1 += k.dot(qu);
    out.d2 += 0.5 * k.dot(quu * k);

    vx = qx + big_k.transpose() * (quu * k) + big_k.transpose() * qu +
         qux.transpose() * k;
    vxx = qxx + big_k.transpose() * quu * big_k + big_k.transpose() * qux +
          qux.transpose() * big_k;
    vxx = 0.5 * (vxx + vxx.transpose()).eval();

    out.feedforward[t] = k;
    out.feedback[t] = big_k;
  }
  out.success = true;
  return out;
}

DdpResult SolveDdp(const Eigen::VectorXd& x0, const DynamicsModel& dynamics,
                   const CostModel& cost,
                   const Eigen::MatrixXd& initial_controls,
                   const DdpConfig& config) {
  config.Validate();
  if (initial_controls.rows() != dynamics.control_dim() ||
      initial_controls.cols() <= 0) {
    throw ConfigError("initial controls have the wrong shape");
  }
  if (x0.size() != dynamics.state_dim()) {
    throw ConfigError("initial state has the wrong dimension");
  }

  DdpResult result;
  Eigen::MatrixXd states, controls;
  double cost_now = ForwardPass(x0, dynamics, cost, Eigen::MatrixXd(x0.size(), initial_controls.cols() + 1),
                                initial_controls, nullptr, 0.0, states,
                                controls);
  result.controls = controls;
  result.cost_history.push_back(cost_now);
  if (!std::isfinite(cost_now)) {
    result.degraded = true;
    return result;
  }

  double reg = config.regularization_init;
  bool relinearize = true;
  TrajectoryExpansion expansion;
  Eigen::MatrixXd trial_states, trial_controls;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    result.iterations = iter + 1;
    if (relinearize) {
      try {
        expansion = Linearize(dynamics, cost, states, controls, config);
      } catch (const DerivativeError&) {
        result.degraded = true;
        break;
      }
      relinearize = false;
    }

    BackwardPassResult policy = BackwardPass(expansion, reg);
    while (!policy.success && reg <= config.regularization_max) {
      reg *= 2.0;
      policy = BackwardPass(expansion, reg);
    }
    if (!policy.success) {
      result.degraded = true;
      break;
    }

    const double expected = -policy.ExpectedChange(1.0);
    if (expected <= config.convergence_tol * std::abs(cost_now)) {
      result.converged = true;
      break;
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int s = 0; s < config.line_search_steps; ++s, alpha *= 0.5) {
      const double trial = ForwardPass(x0, dynamics, cost, states, controls,
                                       &policy, alpha, trial_states,
                                       trial_controls);
      if (trial < cost_now) {
        const double improvement = (cost_now - trial) / std::abs(cost_now);
        states.swap(trial_states);
        controls.swap(trial_controls);
        cost_now = trial;
        result.cost_history.push_back(cost_now);
        ++result.accepted_iterations;
        relinearize = true;
        accepted = true;
        reg = std::max(reg * 0.5, config.regularization_min);
        if (improvement < config.convergence_tol) result.converged = true;
        break;
      }
    }
    if (result.converged) break;
    if (!accepted) {
      reg *= 2.0;
      if (reg > config.regularization_max) {
        result.converged = true;
        break;
      }
    }
  }
  result.controls = controls;
  return result;
}

}  // namespace pintegra
