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

// Acceptance report: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset. The exit status is non-zero only if a
// check could not be carried out; a FAIL line does not change it.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.h"
#include "pintegra/config.h"
#include "pintegra/costs.h"
#include "pintegra/ddp.h"
#include "pintegra/dynamics.h"
#include "pintegra/error.h"
#include "pintegra/mpc.h"
#include "pintegra/noise.h"
#include "pintegra/optimizer.h"
#include "pintegra/rollout.h"
#include "pintegra/tasks.h"
#include "pintegra/thread_pool.h"
#include "pintegra/weights.h"

namespace pintegra {
namespace {

namespace oracle = ::pintegra::testing;
namespace fs = std::filesystem;

constexpr Task kTasks[] = {Task::kPendulum, Task::kHovercraft, Task::kQuadrotor,
                           Task::kCar};
constexpr Method kMethods[] = {Method::kBaseline, Method::kNag,
                               Method::kAdaGrad, Method::kAdam};
constexpr WeightExponent kExponents[] = {WeightExponent::kModifiedCost,
                                         WeightExponent::kLikelihoodRatio,
                                         WeightExponent::kTrajectoryCost};

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string Fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

double MaxAbs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

PathIntegralOptions PresetOptions(Task task, Experiment experiment,
                                  Method method, double gamma,
                                  std::uint64_t seed) {
  PathIntegralOptions o;
  o.sigma = DiagonalSigma(DefaultNoiseStd(task, experiment));
  o.lambda = 0.01;
  o.gamma = gamma;
  o.method = method;
  o.seed = seed;
  o.exponent = WeightExponent::kTrajectoryCost;
  return o;
}

// ---------------------------------------------------------------------------
// 1. Weight rule over randomized rollouts of every task.

Outcome WeightRuleSuite() {
  Outcome out;
  double worst_sum = 0.0, worst_offset = 0.0;
  int divergent_cases = 0;
  for (Task task_id : kTasks) {
    const TaskInstance task = MakeTask(task_id);
    std::mt19937_64 rng(DeriveSeed(1, static_cast<std::uint64_t>(task_id)));
    std::uniform_int_distribution<int> rollout_count(2, 12);
    std::uniform_int_distribution<int> pick_exponent(0, 2);
    std::uniform_real_distribution<double> log_lambda(-2.0, 1.0);
    std::uniform_real_distribution<double> offset(-1e3, 1e3);
    std::normal_distribution<double> normal;
    const int m = task.dynamics->control_dim();
    const int horizon = 8;
    const Eigen::VectorXd std_dev = DefaultNoiseStd(task_id, Experiment::kConverge);

    for (int c = 0; c < 1000; ++c) {
      PathIntegralOptions o;
      o.sigma = DiagonalSigma(std_dev);
      o.lambda = std::pow(10.0, log_lambda(rng));
      o.num_rollouts = rollout_count(rng);
      o.exponent = kExponents[pick_exponent(rng)];
      const PathIntegralConfig config(o);
      const ControlCorrection correction =
          ControlCorrection::For(config, *task.cost);
      const Eigen::VectorXd x0 = SampleInitialState(task, rng());
      Eigen::MatrixXd mean(m, horizon);
      for (int i = 0; i < m; ++i) {
        for (int t = 0; t < horizon; ++t) mean(i, t) = std_dev[i] * normal(rng);
      }
      NoiseRealization noise = SampleNoise(config, horizon, rng());
      const int k_total = noise.rollouts();

      std::vector<Rollout> rollouts(k_total);
      for (int k = 0; k < k_total; ++k) {
        SimulateRollout(x0, mean, noise.epsilon[k], *task.dynamics, *task.cost,
                        correction, rollouts[k]);
      }
      WeightVector w = ComputeWeights(rollouts, o.lambda);
      double sum = 0.0;
      for (int k = 0; k < k_total; ++k) {
        out.Check(w[k] >= 0.0 && w[k] <= 1.0, "weight outside [0, 1]");
        sum += w[k];
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      out.Check(std::abs(sum - 1.0) <= 1e-12, "weights do not sum to one");

      // Offset invariance.
      const Eigen::MatrixXd g = WeightedNoiseAverage(w, noise);
      std::vector<double> shifted;
      const double shift = offset(rng);
      for (const Rollout& r : rollouts) shifted.push_back(r.modified_cost + shift);
      const WeightVector ws = ComputeWeights(shifted, o.lambda);
      const double dw = MaxAbs(ws.values - w.values);
      const double dg = MaxAbs(WeightedNoiseAverage(ws, noise) - g);
      worst_offset = std::max({worst_offset, dw, dg});
      out.Check(dw < 1e-9 && dg < 1e-9, "offset changed the update");

      // Antithetic pairs with tied costs.
      NoiseRealization pairs;
      for (int k = 0; k < k_total; ++k) {
        pairs.epsilon.push_back(noise.epsilon[k]);
        pairs.epsilon.push_back(-noise.epsilon[k]);
      }
      const std::vector<double> tied(pairs.rollouts(), rollouts[0].modified_cost);
      const double cost0 = std::isfinite(tied[0]) ? 0.0 : 1.0;
      std::vector<double> tied_costs(tied.size(), cost0);
      out.Check(WeightedNoiseAverage(ComputeWeights(tied_costs, o.lambda), pairs)
                    .isZero(0.0),
                "antithetic pair did not cancel");

      // Divergence: poison some rollouts with a non-finite command.
      std::vector<int> poisoned;
      for (int k = 1; k < k_total; k += 2) {
        noise.epsilon[k](0, horizon / 2) = std::numeric_limits<double>::quiet_NaN();
        poisoned.push_back(k);
      }
      for (int k : poisoned) {
        SimulateRollout(x0, mean, noise.epsilon[k], *task.dynamics, *task.cost,
                        correction, rollouts[k]);
        out.Check(rollouts[k].divergent, "non-finite rollout not flagged");
      }
      try {
        w = ComputeWeights(rollouts, o.lambda);
        for (int k : poisoned) out.Check(w[k] == 0.0, "divergent weight not 0");
        const Eigen::MatrixXd gd = WeightedNoiseAverage(w, noise);
        out.Check(gd.allFinite(), "divergent rollout leaked into the update");
        ++divergent_cases;
      } catch (const AllRolloutsDivergedError&) {
        out.Check(false, "finite rollouts were lost");
      }
    }
  }
  out.detail += Fmt("%s4000 cases, max |sum-1| %.1e, max offset shift %.1e, "
                    "%d with divergent rollouts",
                    out.detail.empty() ? "" : "; ", worst_sum, worst_offset,
                    divergent_cases);
  return out;
}

// ---------------------------------------------------------------------------
// 2. NAG(gamma = 0) against baseline, offline and in closed loop.

bool SameLogs(const MpcLog& a, const MpcLog& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const MpcStepRecord& x = a.steps[i];
    const MpcStepRecord& y = b.steps[i];
    if (x.time != y.time || x.state != y.state || x.control != y.control ||
        x.running_cost != y.running_cost || x.completions != y.completions ||
        x.target != y.target || x.failed != y.failed) {
      return false;
    }
  }
  return a.completion_costs == b.completion_costs &&
         a.completion_durations == b.completion_durations;
}

Outcome DegeneracySuite() {
  Outcome out;
  int offline = 0, closed_loop = 0;
  for (Task task_id : kTasks) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const TaskInstance task = MakeTask(task_id);
      const Eigen::VectorXd x0 = SampleInitialState(task, seed);
      auto run = [&](Method method) {
        PathIntegralOptions o =
            PresetOptions(task_id, Experiment::kConverge, method, 0.0, seed);
        o.num_rollouts = 100;
        o.num_iterations = 20;
        return Optimize(x0, *task.dynamics, *task.cost, PathIntegralConfig(o),
                        task.horizon);
      };
      const OptimizeResult nag = run(Method::kNag);
      const OptimizeResult base = run(Method::kBaseline);
      out.Check(nag.mu == base.mu && nag.cost_history == base.cost_history,
                Fmt("offline mismatch on %s seed %d",
                    std::string(TaskName(task_id)).c_str(), int(seed)));
      ++offline;
    }
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      auto run = [&](Method method) {
        TaskInstance task = MakeTask(task_id, {}, Experiment::kMpc);
        auto scheduler = MakeScheduler(task, seed);
        PathIntegralOptions o =
            PresetOptions(task_id, Experiment::kMpc, method, 0.0, seed);
        o.num_rollouts = 50;
        o.num_iterations = 5;
        const MpcConfig config{PathIntegralConfig(o),
                               40 * task.dynamics->time_step(), task.horizon};
        return RunMpc(MpcInitialState(task), *task.dynamics, *task.cost,
                      scheduler.get(), config);
      };
      out.Check(SameLogs(run(Method::kNag), run(Method::kBaseline)),
                Fmt("closed-loop mismatch on %s seed %d",
                    std::string(TaskName(task_id)).c_str(), int(seed)));
      ++closed_loop;
    }
  }
  out.detail += Fmt("%s%d offline and %d closed-loop comparisons",
                    out.detail.empty() ? "" : "; ", offline, closed_loop);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Update laws against hand-coded recursions, DDP against Riccati.

std::vector<double> Flat(const Eigen::MatrixXd& m) {
  return {m.data(), m.data() + m.size()};
}

double FlatError(const Eigen::MatrixXd& actual, const std::vector<double>& e) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < actual.size(); ++i) {
    worst = std::max(worst, std::abs(actual.data()[i] - e[i]) /
                                (1.0 + std::abs(e[i])));
  }
  return worst;
}

void RunOracle(Method method, const PathIntegralOptions& opt,
               oracle::ScriptedState& s, const std::vector<double>& g) {
  switch (method) {
    case Method::kBaseline:
      oracle::BaselineOracle(s, g);
      break;
    case Method::kNag:
      oracle::NagOracle(s, g, opt.gamma);
      break;
    case Method::kAdaGrad:
      oracle::AdaGradOracle(s, g, opt.gamma, opt.adagrad_epsilon);
      break;
    case Method::kAdam:
      oracle::AdamOracle(s, g, opt.adam_alpha, opt.adam_beta1, opt.adam_beta2,
                         opt.adam_epsilon);
      break;
  }
}

class LinearDynamics final : public DynamicsModel {
 public:
  LinearDynamics(Eigen::MatrixXd a, Eigen::MatrixXd b)
      : a_(std::move(a)), b_(std::move(b)) {}
  std::string_view name() const override { return "linear"; }
  int state_dim() const override { return static_cast<int>(a_.rows()); }
  int control_dim() const override { return static_cast<int>(b_.cols()); }
  double time_step() const override { return 1.0; }
  using DynamicsModel::Step;
  void Step(std::span<const double> x, std::span<const double> u,
            std::span<double> next) const override {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), state_dim());
    Eigen::Map<const Eigen::VectorXd> uv(u.data(), control_dim());
    Eigen::Map<Eigen::VectorXd>(next.data(), state_dim()) = a_ * xv + b_ * uv;
  }

 private:
  Eigen::MatrixXd a_, b_;
};

class QuadraticCost final : public CostModel {
 public:
  QuadraticCost(Eigen::MatrixXd q, Eigen::MatrixXd r)
      : q_(std::move(q)), r_(std::move(r)) {}
  double RunningCost(std::span<const double> x) const override {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), q_.rows());
    return xv.dot(q_ * xv);
  }
  const Eigen::MatrixXd& control_weight() const override { return r_; }

 private:
  Eigen::MatrixXd q_, r_;
};

Outcome OracleSuite() {
  Outcome out;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> small(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_update = 0.0;
  int update_cases = 0;

  // Whole update on the pendulum: rollouts, weights and the law.
  for (Method method : kMethods) {
    for (WeightExponent exponent : kExponents) {
      for (int c = 0; c < 50; ++c) {
        const int k_total = small(rng), horizon = small(rng);
        PendulumParams p;
        p.mass = 0.02 + 0.1 * unit(rng);
        p.damping = 0.01 * unit(rng);
        PendulumDynamics dynamics(p);
        PendulumCost cost;
        PathIntegralOptions o;
        const double sigma2 = 0.01 + unit(rng);
        o.sigma = Eigen::MatrixXd::Constant(1, 1, sigma2);
        o.lambda = 0.05 + unit(rng);
        o.gamma = 0.95 * unit(rng);
        o.method = method;
        o.exponent = exponent;
        o.adam_alpha = 0.1 + unit(rng);
        const PathIntegralConfig config(o);
        PathIntegralOptimizer optimizer(dynamics, cost, config, horizon);

        OptimizerState state = OptimizerState::Zero(1, horizon);
        Eigen::MatrixXd mu(1, horizon), dmu(1, horizon), acc(1, horizon),
            m1(1, horizon), m2(1, horizon);
        for (int t = 0; t < horizon; ++t) {
          mu(0, t) = 0.5 * normal(rng);
          dmu(0, t) = 0.3 * normal(rng);
          acc(0, t) = unit(rng);
          m1(0, t) = 0.1 * normal(rng);
          m2(0, t) = 0.1 * unit(rng);
        }
        state.mu = ControlSequence(mu);
        state.delta_mu = Momentum(dmu);
        state.adagrad_accumulator = acc;
        state.adam_first_moment = m1;
        state.adam_second_moment = m2;
        state.iteration = small(rng);
        NoiseRealization noise;
        for (int k = 0; k < k_total; ++k) {
          Eigen::MatrixXd e(1, horizon);
          for (int t = 0; t < horizon; ++t) e(0, t) = std::sqrt(sigma2) * normal(rng);
          noise.epsilon.push_back(e);
        }
        const Eigen::Vector2d x0(3.0 * normal(rng), normal(rng));

        const bool drift = method == Method::kNag || method == Method::kAdaGrad;
        std::vector<double> costs;
        for (const Eigen::MatrixXd& eps : noise.epsilon) {
          double th = x0[0], thd = x0[1];
          double s = oracle::PendulumCostOracle(th, thd);
          for (int t = 0; t < horizon; ++t) {
            const double nu = mu(0, t) + (drift ? o.gamma * dmu(0, t) : 0.0);
            const double u = nu + eps(0, t);
            oracle::PendulumStepOracle(p.mass, p.length, p.damping, p.gravity,
                                       p.dt, th, thd, u);
            s += oracle::PendulumCostOracle(th, thd);
            if (exponent == WeightExponent::kModifiedCost) {
              s += nu * o.lambda / (2.0 * sigma2) * eps(0, t);
            } else if (exponent == WeightExponent::kLikelihoodRatio) {
              s += o.lambda * nu / sigma2 * eps(0, t);
            } else {
              s += 5.0 * u * u;
            }
          }
          costs.push_back(s);
        }
        const Eigen::MatrixXd g = oracle::WeightedSumOracle(
            oracle::SoftmaxOracle(costs, o.lambda), noise.epsilon);
        oracle::ScriptedState expected{Flat(mu), Flat(dmu), Flat(acc),
                                       Flat(m1), Flat(m2), state.iteration};
        RunOracle(method, o, expected, Flat(g));
        const OptimizerState next = optimizer.Update(x0, state, noise);
        const double err = std::max(FlatError(next.mu.values(), expected.mu),
                                    FlatError(next.delta_mu.values(), expected.dmu));
        worst_update = std::max(worst_update, err);
        out.Check(err <= 1e-12,
                  Fmt("%s update off by %.2e", std::string(MethodName(method)).c_str(), err));
        ++update_cases;
      }
    }
  }

  // Scripted gradient sequences.
  for (Method method : kMethods) {
    for (int c = 0; c < 50; ++c) {
      const int m = small(rng), horizon = small(rng);
      PathIntegralOptions o;
      o.sigma = Eigen::MatrixXd::Identity(m, m);
      o.gamma = 0.95 * unit(rng);
      o.adam_alpha = 0.1 + unit(rng);
      const PathIntegralConfig config(o);
      OptimizerState s = OptimizerState::Zero(m, horizon);
      oracle::ScriptedState e = oracle::ScriptedInit(m * horizon);
      for (int j = 0; j < 5; ++j) {
        Eigen::MatrixXd g(m, horizon);
        for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
        s = ApplyUpdate(method, config, s, g);
        RunOracle(method, o, e, Flat(g));
      }
      const double err = std::max(FlatError(s.mu.values(), e.mu),
                                  FlatError(s.delta_mu.values(), e.dmu));
      worst_update = std::max(worst_update, err);
      out.Check(err <= 1e-12, "scripted sequence mismatch");
      ++update_cases;
    }
  }

  // DDP on random LQR problems.
  double worst_ddp = 0.0;
  std::uniform_int_distribution<int> dim(1, 4);
  for (int c = 0; c < 50; ++c) {
    const int n = dim(rng), m = dim(rng), horizon = 5 + c % 11;
    auto random = [&](int rows, int cols, double s) {
      Eigen::MatrixXd r(rows, cols);
      for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = s * normal(rng);
      return r;
    };
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + random(n, n, 0.2);
    const Eigen::MatrixXd b = random(n, m, 0.5);
    const Eigen::MatrixXd mq = random(n, n, 0.5);
    const Eigen::MatrixXd q = mq.transpose() * mq + 0.1 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd mr = random(m, m, 0.3);
    const Eigen::MatrixXd r = mr.transpose() * mr + 0.2 * Eigen::MatrixXd::Identity(m, m);
    const Eigen::VectorXd x0 = random(n, 1, 1.0);
    const double optimal =
        x0.dot(oracle::RiccatiOracle(a, b, q, r, horizon).p0 * x0);
    LinearDynamics dynamics(a, b);
    QuadraticCost cost(q, r);
    const DdpResult result =
        SolveDdp(x0, dynamics, cost, Eigen::MatrixXd::Zero(m, horizon));
    const double rel = std::abs(result.final_cost() - optimal) / optimal;
    worst_ddp = std::max(worst_ddp, rel);
    out.Check(rel <= 1e-6, Fmt("LQR cost off by %.2e relative", rel));
  }
  out.detail += Fmt("%s%d update cases, max rel error %.1e; 50 LQR, max rel "
                    "cost error %.1e",
                    out.detail.empty() ? "" : "; ", update_cases, worst_update,
                    worst_ddp);
  return out;
}

// ---------------------------------------------------------------------------
// 4 and 5. Offline convergence at desk scale.

struct Curves {
  std::vector<double> baseline;
  std::vector<double> nag;
  std::vector<double> nag_final;  // per seed
  std::vector<double> ddp;        // per seed, converged cost
};

Curves ConvergenceCurves(Task task_id, int seeds, bool baseline, bool ddp,
                         ThreadPool* pool) {
  Curves c;
  const TaskInstance task = MakeTask(task_id);
  const int iterations = 100;
  c.baseline.assign(iterations + 1, 0.0);
  c.nag.assign(iterations + 1, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const auto seed = static_cast<std::uint64_t>(s);
    const Eigen::VectorXd x0 = SampleInitialState(task, seed);
    for (Method method : {Method::kBaseline, Method::kNag}) {
      if (method == Method::kBaseline && !baseline) continue;
      PathIntegralOptions o =
          PresetOptions(task_id, Experiment::kConverge, method, 0.8, seed);
      o.num_rollouts = 1000;
      o.num_iterations = iterations;
      const OptimizeResult r = Optimize(x0, *task.dynamics, *task.cost,
                                        PathIntegralConfig(o), task.horizon,
                                        pool);
      std::vector<double>& curve =
          method == Method::kNag ? c.nag : c.baseline;
      for (int j = 0; j <= iterations; ++j) curve[j] += r.cost_history[j] / seeds;
      if (method == Method::kNag) c.nag_final.push_back(r.cost_history.back());
    }
    if (ddp) {
      c.ddp.push_back(SolveDdp(x0, *task.dynamics, *task.cost,
                               Eigen::MatrixXd::Zero(
                                   task.dynamics->control_dim(), task.horizon))
                          .final_cost());
    }
  }
  return c;
}

Curves& CachedCurves(Task task_id, ThreadPool* pool) {
  static std::map<Task, Curves> cache;
  auto it = cache.find(task_id);
  if (it == cache.end()) {
    const bool baseline = task_id != Task::kCar;
    it = cache.emplace(task_id, ConvergenceCurves(task_id, 10, baseline,
                                                  task_id != Task::kPendulum,
                                                  pool))
             .first;
  }
  return it->second;
}

Outcome ConvergenceOrdering(ThreadPool* pool) {
  Outcome out;
  std::string report;
  for (Task task_id : {Task::kPendulum, Task::kHovercraft}) {
    const Curves& c = CachedCurves(task_id, pool);
    int violations = 0;
    for (int j = 20; j <= 100; ++j) violations += c.nag[j] > c.baseline[j];
    int reach = -1;
    for (int j = 0; j <= 100; ++j) {
      if (c.nag[j] <= c.baseline[100]) {
        reach = j;
        break;
      }
    }
    const std::string name(TaskName(task_id));
    out.Check(violations == 0,
              Fmt("%s: NAG above baseline at %d iterations", name.c_str(),
                  violations));
    out.Check(reach >= 0 && reach <= 50,
              Fmt("%s: NAG reaches baseline final at %d", name.c_str(), reach));
    report += Fmt("%s%s: NAG reaches baseline j=100 cost (%.4g) at j=%d, "
                  "%d violations for j>=20",
                  report.empty() ? "" : "; ", name.c_str(), c.baseline[100],
                  reach, violations);
  }
  out.detail += (out.detail.empty() ? "" : "; ") + report;
  return out;
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

Outcome DdpNormalizedCost(ThreadPool* pool) {
  Outcome out;
  std::string report;
  for (Task task_id : {Task::kHovercraft, Task::kCar}) {
    const Curves& c = CachedCurves(task_id, pool);
    const double ratio = Mean(c.nag_final) / Mean(c.ddp);
    const std::string name(TaskName(task_id));
    out.Check(ratio <= 1.1, Fmt("%s ratio %.3f", name.c_str(), ratio));
    report += Fmt("%s%s: NAG j=100 / DDP = %.4f / %.4f = %.3f",
                  report.empty() ? "" : "; ", name.c_str(), Mean(c.nag_final),
                  Mean(c.ddp), ratio);
  }
  out.detail += (out.detail.empty() ? "" : "; ") + report;
  return out;
}

// ---------------------------------------------------------------------------
// 6. Hovercraft MPC campaign.

Outcome MpcOrdering(ThreadPool* pool) {
  Outcome out;
  int completions[2] = {0, 0};
  double cost_sum[2] = {0.0, 0.0};
  const Method methods[2] = {Method::kBaseline, Method::kNag};
  for (int mi = 0; mi < 2; ++mi) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      TaskInstance task = MakeTask(Task::kHovercraft, {}, Experiment::kMpc);
      auto scheduler = MakeScheduler(task, seed);
      PathIntegralOptions o = PresetOptions(
          Task::kHovercraft, Experiment::kMpc, methods[mi], 0.8, seed);
      o.num_rollouts = 100;
      o.num_iterations = 10;
      const MpcConfig config{PathIntegralConfig(o), 120.0, task.horizon};
      const MpcLog log = RunMpc(MpcInitialState(task), *task.dynamics,
                                *task.cost, scheduler.get(), config, pool);
      completions[mi] += log.summary.completions;
      for (double c : log.completion_costs) cost_sum[mi] += c;
    }
  }
  const double mean_cost[2] = {
      completions[0] ? cost_sum[0] / completions[0]
                     : std::numeric_limits<double>::quiet_NaN(),
      completions[1] ? cost_sum[1] / completions[1]
                     : std::numeric_limits<double>::quiet_NaN()};
  out.Check(completions[1] >= 1.5 * completions[0] && completions[1] > 0,
            "completion ratio below 1.5");
  out.Check(mean_cost[1] < mean_cost[0], "NAG mean cost not lower");
  out.detail += Fmt("%scompletions baseline %d, NAG %d (x%.2f); mean cost to "
                    "completion baseline %.2f, NAG %.2f",
                    out.detail.empty() ? "" : "; ", completions[0],
                    completions[1],
                    completions[0] ? double(completions[1]) / completions[0]
                                   : 0.0,
                    mean_cost[0], mean_cost[1]);
  return out;
}

// ---------------------------------------------------------------------------
// 7. Likelihood-ratio weights against Gaussian densities.

Outcome LikelihoodRatioEquivalence() {
  Outcome out;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> length(1, 20);
  std::uniform_int_distribution<int> count(2, 32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const int m = dim(rng), horizon = length(rng);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      l(i, i) = 0.2 + unit(rng);
      for (int j = 0; j < i; ++j) l(i, j) = 0.3 * normal(rng);
    }
    PathIntegralOptions o;
    o.sigma = (0.05 + unit(rng)) * l * l.transpose();
    o.sigma = 0.5 * (o.sigma + o.sigma.transpose()).eval();
    o.lambda = std::pow(10.0, -2.0 + 2.5 * unit(rng));
    o.num_rollouts = count(rng);
    o.exponent = WeightExponent::kLikelihoodRatio;
    const PathIntegralConfig config(o);
    Eigen::MatrixXd mu(m, horizon);
    for (Eigen::Index i = 0; i < mu.size(); ++i) mu.data()[i] = normal(rng);
    const NoiseRealization noise = SampleNoise(config, horizon, rng());
    const ControlCorrection correction{WeightExponent::kLikelihoodRatio,
                                       o.lambda * config.sigma_inverse()};

    // Independent: full Gaussian log densities via an LDLT solve.
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(o.sigma);
    std::vector<double> costs, oracle_costs;
    for (int k = 0; k < noise.rollouts(); ++k) {
      const double state_cost = 10.0 * unit(rng);
      const Eigen::MatrixXd& eps = noise.epsilon[k];
      costs.push_back(state_cost + correction.Evaluate(mu, eps, mu + eps));
      long double log_ratio = 0;
      for (int t = 0; t < horizon; ++t) {
        const Eigen::VectorXd u = mu.col(t) + eps.col(t);
        log_ratio += -0.5L * u.dot(ldlt.solve(u)) +
                     0.5L * eps.col(t).dot(ldlt.solve(eps.col(t)));
      }
      // Exponent -S/lambda + log(p0/p), expressed as a cost at lambda = 1.
      oracle_costs.push_back(
          static_cast<double>(state_cost / o.lambda - log_ratio));
    }
    const WeightVector w = ComputeWeights(costs, o.lambda);
    const std::vector<double> expected = oracle::SoftmaxOracle(oracle_costs, 1.0);
    for (int k = 0; k < w.size(); ++k) {
      worst = std::max(worst, std::abs(w[k] - expected[k]));
    }
  }
  out.Check(worst <= 1e-9, "weights differ");
  out.detail += Fmt("%s1000 cases, max |dw| %.2e",
                    out.detail.empty() ? "" : "; ", worst);
  return out;
}

// ---------------------------------------------------------------------------
// 8. Byte-identical CLI output across thread counts.

std::string ReadBody(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  const std::string text = s.str();
  const auto eol = text.find('\n');
  return eol == std::string::npos ? "" : text.substr(eol + 1);
}

Outcome CliDeterminism() {
  Outcome out;
#ifndef PINTEGRA_CLI
  out.Check(false, "command-line tool was not built");
  return out;
#else
  const fs::path root = fs::temp_directory_path() / "pintegra_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root);
  struct Experiment {
    const char* command;
    const char* json;
    std::vector<const char*> files;
  };
  const std::vector<Experiment> experiments{
      {"converge",
       R"({"task": ["pendulum", "hovercraft", "quadrotor", "car"],
           "methods": ["baseline", "nag", "adagrad", "adam"], "seeds": [0, 1],
           "K": 200, "U": 15})",
       {"convergence.csv", "summary.csv", "reference.csv"}},
      {"mpc",
       R"({"task": ["hovercraft", "car", "pendulum"], "seeds": [0, 1],
           "K": 100, "U": 10, "sim_duration": 2})",
       {"mpc_steps.csv", "mpc_runs.csv", "mpc_summary.csv"}},
      {"sweep",
       R"({"task": "car", "seeds": [0, 1], "K": 100, "U": 10,
           "sweep": {"gamma": [0, 0.5], "K": [50, 100]}})",
       {"sweep.csv"}},
  };
  int compared = 0;
  for (const Experiment& e : experiments) {
    const fs::path config = root / (std::string(e.command) + ".json");
    std::ofstream(config) << e.json;
    std::vector<std::string> runs;
    for (int threads : {1, 1, 4, 8}) {
      const fs::path dir =
          root / (std::string(e.command) + "_" + std::to_string(runs.size()));
      const std::string cmd = std::string(PINTEGRA_CLI) + " " + e.command +
                              " --config " + config.string() + " --out " +
                              dir.string() + " --threads " +
                              std::to_string(threads) + " >/dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      out.Check(WIFEXITED(status) && WEXITSTATUS(status) == 0,
                std::string(e.command) + " exited with an error");
      runs.push_back(dir.string());
    }
    for (const char* file : e.files) {
      const std::string first = ReadBody(fs::path(runs[0]) / file);
      out.Check(!first.empty(), std::string(file) + " is empty");
      for (std::size_t i = 1; i < runs.size(); ++i) {
        out.Check(ReadBody(fs::path(runs[i]) / file) == first,
                  std::string(e.command) + "/" + file + " differs");
        ++compared;
      }
    }
  }
  fs::remove_all(root);
  out.detail += Fmt("%s%d file comparisons (threads 1, 1, 4, 8)",
                    out.detail.empty() ? "" : "; ", compared);
  return out;
#endif
}

// ---------------------------------------------------------------------------
// 9. Cost point values.

Outcome CostPoints() {
  Outcome out;
  auto q = [](const CostModel& cost, const Eigen::VectorXd& x) {
    return cost.RunningCost({x.data(), static_cast<std::size_t>(x.size())});
  };
  out.Check(PseudoHuber(3.0, 4.0) == 1.0, "h(3, 4) != 1");
  out.Check(PseudoHuber(0.0, 1.0) == 0.0, "h(0, w) != 0");

  PendulumCost pendulum;
  out.Check(q(pendulum, Eigen::Vector2d(0.0, 0.0)) == 4.0, "pendulum q(0, 0)");
  out.Check(q(pendulum, Eigen::Vector2d(std::numbers::pi, 0.0)) < 1e-30,
            "pendulum upright not free");

  CarCost car;
  Eigen::VectorXd xc = Eigen::VectorXd::Zero(CarDynamics::kStateDim);
  out.Check(q(car, xc) == 101.5625, "car q(0, 0, 0)");
  xc[CarDynamics::kX] = 2.0;
  xc[CarDynamics::kVx] = CarCost::kDesiredSpeed;
  out.Check(q(car, xc) == 0.0, "car on track at speed not free");

  HovercraftCost hovercraft;
  hovercraft.set_target(Eigen::Vector2d(0.7, -1.2));
  Eigen::VectorXd xh = Eigen::VectorXd::Zero(HovercraftDynamics::kStateDim);
  xh[HovercraftDynamics::kX] = 0.7;
  xh[HovercraftDynamics::kY] = -1.2;
  out.Check(q(hovercraft, xh) == 0.0, "hovercraft at goal not free");

  QuadrotorCost quadrotor;
  quadrotor.set_target(Eigen::Vector3d(1.0, -1.0, 0.5));
  Eigen::VectorXd xq = Eigen::VectorXd::Zero(QuadrotorDynamics::kStateDim);
  xq.segment<3>(QuadrotorDynamics::kPx) << 1.0, -1.0, 0.5;
  xq[QuadrotorDynamics::kQw] = 1.0;
  out.Check(q(quadrotor, xq) == 0.0, "quadrotor at goal not free");
  out.detail += out.pass ? "all point values exact" : "";
  return out;
}

}  // namespace
}  // namespace pintegra

int main(int argc, char** argv) {
  using pintegra::Outcome;
  pintegra::ThreadPool pool(
      std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  const std::vector<std::function<Outcome()>> criteria{
      pintegra::WeightRuleSuite,
      pintegra::DegeneracySuite,
      pintegra::OracleSuite,
      [&] { return pintegra::ConvergenceOrdering(&pool); },
      [&] { return pintegra::DdpNormalizedCost(&pool); },
      [&] { return pintegra::MpcOrdering(&pool); },
      pintegra::LikelihoodRatioEquivalence,
      pintegra::CliDeterminism,
      pintegra::CostPoints,
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int passed = 0, run = 0;
  for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
    if (!selected.empty() && !selected.count(n)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      std::printf("CRITERION %d ERROR %s\n", n, e.what());
      return 2;
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::printf("CRITERION %d %s %s (%.1f s)\n", n, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    ++run;
    passed += o.pass;
  }
  std::printf("%d/%d criteria passed\n", passed, run);
  return 0;
}
