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


#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "pintegra/config.h"
#include "pintegra/costs.h"
#include "pintegra/ddp.h"
#include "pintegra/noise.h"
#include "pintegra/optimizer.h"
#include "pintegra/rollout.h"
#include "pintegra/tasks.h"
#include "pintegra/thread_pool.h"
#include "pintegra/weights.h"

namespace pintegra {
namespace {

constexpr Task kTasks[] = {Task::kPendulum, Task::kHovercraft, Task::kQuadrotor,
                           Task::kCar};

PathIntegralConfig Preset(Task task, int rollouts, Method method) {
  PathIntegralOptions o;
  o.sigma = DiagonalSigma(DefaultNoiseStd(task, Experiment::kConverge));
  o.lambda = 0.01;
  o.gamma = 0.8;
  o.num_rollouts = rollouts;
  o.method = method;
  o.exponent = WeightExponent::kTrajectoryCost;
  return PathIntegralConfig(o);
}

// One rollout over the default horizon.
void BM_Rollout(benchmark::State& state) {
  const Task task_id = kTasks[state.range(0)];
  const TaskInstance task = MakeTask(task_id);
  const PathIntegralConfig config = Preset(task_id, 1, Method::kBaseline);
  const ControlCorrection correction = ControlCorrection::For(config, *task.cost);
  const Eigen::VectorXd x0 = SampleInitialState(task, 0);
  const Eigen::MatrixXd mean =
      Eigen::MatrixXd::Zero(task.dynamics->control_dim(), task.horizon);
  const NoiseRealization noise = SampleNoise(config, task.horizon, 1);
  Rollout rollout;
  for (auto _ : state) {
    SimulateRollout(x0, mean, noise.epsilon[0], *task.dynamics, *task.cost,
                    correction, rollout);
    benchmark::DoNotOptimize(rollout.modified_cost);
  }
  state.SetLabel(std::string(TaskName(task_id)));
  state.SetItemsProcessed(state.iterations() * task.horizon);
}
BENCHMARK(BM_Rollout)->DenseRange(0, 3);

void BM_SampleNoise(benchmark::State& state) {
  const PathIntegralConfig config =
      Preset(Task::kQuadrotor, static_cast<int>(state.range(0)),
             Method::kBaseline);
  NoiseRealization noise;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SampleNoiseInto(config, 40, seed++, noise);
    benchmark::DoNotOptimize(noise.epsilon.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 40 * 4);
}
BENCHMARK(BM_SampleNoise)->Arg(100)->Arg(1000);

void BM_Weights(benchmark::State& state) {
  std::vector<double> costs(state.range(0));
  for (std::size_t k = 0; k < costs.size(); ++k) costs[k] = 10.0 + 1e-3 * k;
  for (auto _ : state) {
    WeightVector w = ComputeWeights(costs, 0.01);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_Weights)->Arg(100)->Arg(1000);

// Full update: K rollouts, weights and the method's step.
void BM_Update(benchmark::State& state) {
  const Method method = static_cast<Method>(state.range(0));
  const Task task_id = Task::kHovercraft;
  const TaskInstance task = MakeTask(task_id);
  const PathIntegralConfig config =
      Preset(task_id, static_cast<int>(state.range(1)), method);
  ThreadPool pool(static_cast<int>(state.range(2)));
  PathIntegralOptimizer optimizer(*task.dynamics, *task.cost, config,
                                  task.horizon, &pool);
  const Eigen::VectorXd x0 = SampleInitialState(task, 0);
  OptimizerState s =
      OptimizerState::Zero(task.dynamics->control_dim(), task.horizon);
  const NoiseRealization noise = SampleNoise(config, task.horizon, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimizer.Update(x0, s, noise));
  }
  state.SetLabel(std::string(MethodName(method)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Update)
    ->ArgsProduct({{0, 1, 2, 3}, {1000}, {1}})
    ->Args({1, 1000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_Ddp(benchmark::State& state) {
  const TaskInstance task = MakeTask(Task::kCar);
  const Eigen::VectorXd x0 = SampleInitialState(task, 0);
  const Eigen::MatrixXd init =
      Eigen::MatrixXd::Zero(task.dynamics->control_dim(), task.horizon);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveDdp(x0, *task.dynamics, *task.cost, init));
  }
}
BENCHMARK(BM_Ddp)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pintegra

BENCHMARK_MAIN();
