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

#include "commands.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "csv.h"
#include "pintegra/ddp.h"
#include "pintegra/error.h"
#include "pintegra/mpc.h"
#include "pintegra/optimizer.h"
#include "pintegra/thread_pool.h"

namespace pintegra::tools {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::vector<double> ToVector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

void PrepareOutput(const CommandOptions& options) {
  std::filesystem::create_directories(options.out_dir);
}

struct OptimizationRun {
  std::vector<double> cost;
  std::vector<double> wall_time_ms;
};

// nullopt when every rollout of some iteration diverged or the plant failed.
std::optional<OptimizationRun> RunOptimization(
    const TaskInstance& task, const Eigen::VectorXd& x0,
    const PathIntegralOptions& options, bool record_timing, ThreadPool* pool) {
  const PathIntegralConfig config(options);
  OptimizationRun run;
  run.wall_time_ms.push_back(0.0);
  const Clock::time_point start = Clock::now();
  try {
    OptimizeResult result = Optimize(
        x0, *task.dynamics, *task.cost, config, task.horizon, pool,
        [&](int, const OptimizerState&, double) {
          run.wall_time_ms.push_back(record_timing ? MillisecondsSince(start)
                                                   : 0.0);
        });
    run.cost = std::move(result.cost_history);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  return run;
}

int IterationsToThreshold(const std::vector<double>& cost, double ratio) {
  const double threshold = ratio * cost.front();
  for (std::size_t j = 0; j < cost.size(); ++j) {
    if (cost[j] <= threshold) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

void RunConverge(const ExperimentConfig& config,
                 const CommandOptions& options) {
  PrepareOutput(options);
  ThreadPool pool(options.threads);
  std::vector<ConvergenceRow> rows;
  std::vector<ReferenceRow> references;
  std::vector<SummaryRow> summary;
  const int iterations = config.num_iterations;

  for (Task task_id : config.tasks) {
    const TaskInstance task =
        MakeConfiguredTask(config, task_id, Experiment::kConverge);
    const std::string task_name(TaskName(task_id));
    // Per method: sum of costs and number of successful seeds.
    std::vector<std::vector<double>> sums(
        config.methods.size(), std::vector<double>(iterations + 1, 0.0));
    std::vector<int> successes(config.methods.size(), 0);
    double ddp_converged_sum = 0.0;
    double ddp_fixed_sum = 0.0;
    int ddp_count = 0;

    for (std::uint64_t seed : config.seeds) {
      const Eigen::VectorXd x0 = SampleInitialState(task, seed);
      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const Method method = config.methods[mi];
        const std::string method_name(MethodName(method));
        const auto run = RunOptimization(
            task, x0,
            MakeOptions(config, task_id, method, seed, Experiment::kConverge),
            config.record_timing, &pool);
        if (!run) {
          rows.push_back({task_name, method_name, seed, -1, kNaN, 0.0});
          continue;
        }
        ++successes[mi];
        for (int j = 0; j <= iterations; ++j) {
          rows.push_back({task_name, method_name, seed, j, run->cost[j],
                          run->wall_time_ms[j]});
          sums[mi][j] += run->cost[j];
        }
      }

      if (!config.run_ddp) continue;
      const Clock::time_point start = Clock::now();
      const DdpResult ddp = SolveDdp(
          x0, *task.dynamics, *task.cost,
          Eigen::MatrixXd::Zero(task.dynamics->control_dim(), task.horizon),
          config.ddp);
      const double elapsed = config.record_timing ? MillisecondsSince(start)
                                                  : 0.0;
      const int last = static_cast<int>(ddp.cost_history.size()) - 1;
      for (int k = 0; k <= last; ++k) {
        rows.push_back({task_name, "ddp", seed, k, ddp.cost_history[k],
                        k == last ? elapsed : 0.0});
      }
      const double fixed = ddp.cost_history[std::min(last, iterations)];
      references.push_back({task_name, seed, ddp.final_cost(), fixed,
                            ddp.iterations, ddp.accepted_iterations,
                            ddp.degraded});
      ddp_converged_sum += ddp.final_cost();
      ddp_fixed_sum += fixed;
      ++ddp_count;
    }

    const double ddp_converged =
        ddp_count > 0 ? ddp_converged_sum / ddp_count : kNaN;
    const double ddp_fixed = ddp_count > 0 ? ddp_fixed_sum / ddp_count : kNaN;
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      const std::string method_name(MethodName(config.methods[mi]));
      for (int j = 0; j <= iterations; ++j) {
        const double mean =
            successes[mi] > 0 ? sums[mi][j] / successes[mi] : kNaN;
        summary.push_back({task_name, method_name, j, mean,
                           mean / ddp_converged, mean / ddp_fixed,
                           successes[mi]});
      }
    }
  }

  WriteCsv(options.out_dir / "convergence.csv", rows);
  WriteCsv(options.out_dir / "summary.csv", summary);
  if (config.run_ddp) WriteCsv(options.out_dir / "reference.csv", references);
}

void RunMpcCampaign(const ExperimentConfig& config,
                    const CommandOptions& options) {
  PrepareOutput(options);
  ThreadPool pool(options.threads);
  std::vector<MpcStepRow> steps;
  std::vector<MpcRunRow> runs;
  std::vector<MpcSummaryRow> summary;

  for (Task task_id : config.tasks) {
    const std::string task_name(TaskName(task_id));
    for (Method method : config.methods) {
      const std::string method_name(MethodName(method));
      int completions = 0;
      double time_sum = 0.0;
      double cost_sum = 0.0;
      for (std::uint64_t seed : config.seeds) {
        TaskInstance task =
            MakeConfiguredTask(config, task_id, Experiment::kMpc);
        std::unique_ptr<TaskScheduler> scheduler = MakeScheduler(task, seed);
        const MpcConfig mpc{
            PathIntegralConfig(
                MakeOptions(config, task_id, method, seed, Experiment::kMpc)),
            config.sim_duration, task.horizon};
        MpcLog log;
        try {
          log = RunMpc(MpcInitialState(task), *task.dynamics, *task.cost,
                       scheduler.get(), mpc, &pool);
        } catch (const std::runtime_error&) {
          runs.push_back({task_name, method_name, seed, -1, 0, kNaN, kNaN, 0,
                          kNaN});
          continue;
        }
        for (std::size_t i = 0; i < log.steps.size(); ++i) {
          const MpcStepRecord& r = log.steps[i];
          steps.push_back({task_name, method_name, seed, static_cast<int>(i),
                           r.time, r.running_cost, r.completions, r.failed,
                           ToVector(r.target), ToVector(r.control),
                           ToVector(r.state)});
        }
        const MpcSummary& s = log.summary;
        runs.push_back({task_name, method_name, seed, s.steps, s.completions,
                        s.mean_time_to_completion, s.mean_cost_to_completion,
                        s.failed_steps, s.total_cost});
        completions += s.completions;
        for (double d : log.completion_durations) time_sum += d;
        for (double c : log.completion_costs) cost_sum += c;
      }
      summary.push_back({task_name, method_name,
                         static_cast<int>(config.seeds.size()), completions,
                         completions > 0 ? time_sum / completions : kNaN,
                         completions > 0 ? cost_sum / completions : kNaN});
    }
  }

  WriteCsv(options.out_dir / "mpc_steps.csv", steps);
  WriteCsv(options.out_dir / "mpc_runs.csv", runs);
  WriteCsv(options.out_dir / "mpc_summary.csv", summary);
}

void RunSweep(const ExperimentConfig& config, const CommandOptions& options) {
  PrepareOutput(options);
  ThreadPool pool(options.threads);
  const std::vector<double> gammas =
      config.sweep.gamma.empty() ? std::vector<double>{config.gamma}
                                 : config.sweep.gamma;
  const std::vector<int> rollouts =
      config.sweep.num_rollouts.empty()
          ? std::vector<int>{config.num_rollouts}
          : config.sweep.num_rollouts;
  const std::vector<double> lambdas =
      config.sweep.lambda.empty() ? std::vector<double>{config.lambda}
                                  : config.sweep.lambda;

  std::vector<SweepRow> rows;
  for (Task task_id : config.tasks) {
    const TaskInstance task =
        MakeConfiguredTask(config, task_id, Experiment::kConverge);
    const std::string task_name(TaskName(task_id));
    for (Method method : config.methods) {
      const std::string method_name(MethodName(method));
      for (double gamma : gammas) {
        for (int k : rollouts) {
          for (double lambda : lambdas) {
            for (std::uint64_t seed : config.seeds) {
              PathIntegralOptions o = MakeOptions(config, task_id, method,
                                                  seed, Experiment::kConverge);
              o.gamma = gamma;
              o.num_rollouts = k;
              o.lambda = lambda;
              const auto run =
                  RunOptimization(task, SampleInitialState(task, seed), o,
                                  /*record_timing=*/false, &pool);
              if (!run) {
                rows.push_back({task_name, method_name, seed, gamma, k, lambda,
                                kNaN, -1});
                continue;
              }
              rows.push_back(
                  {task_name, method_name, seed, gamma, k, lambda,
                   run->cost.back(),
                   IterationsToThreshold(run->cost,
                                         config.sweep.threshold_ratio)});
            }
          }
        }
      }
    }
  }
  WriteCsv(options.out_dir / "sweep.csv", rows);
}

}  // namespace pintegra::tools
