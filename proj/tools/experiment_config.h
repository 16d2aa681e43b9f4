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

#ifndef PINTEGRA_TOOLS_EXPERIMENT_CONFIG_H_
#define PINTEGRA_TOOLS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pintegra/config.h"
#include "pintegra/ddp.h"
#include "pintegra/tasks.h"

namespace pintegra::tools {

struct SweepGrid {
  std::vector<double> gamma;
  std::vector<int> num_rollouts;
  std::vector<double> lambda;
  // A cell reaches the threshold at the first iteration whose cost is at
  // most threshold_ratio times the zero-plan cost.
  double threshold_ratio = 0.5;
};

// One experiment file. Every field except "task" is optional; see the README
// for the schema.
struct ExperimentConfig {
  std::vector<Task> tasks;
  std::vector<Method> methods{Method::kBaseline, Method::kNag};
  std::vector<std::uint64_t> seeds{0};
  int num_rollouts = 1000;
  int num_iterations = 100;
  double lambda = 0.01;
  double gamma = 0.8;
  // Per-channel noise standard deviation; task preset when empty.
  std::vector<double> noise_std;
  WeightExponent exponent = WeightExponent::kTrajectoryCost;
  std::optional<int> horizon;
  double adagrad_epsilon = 1e-8;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double adam_alpha = 1.0;
  ModelParams models;
  DdpConfig ddp;
  bool run_ddp = true;
  double sim_duration = 120.0;
  SweepGrid sweep;
  std::string output;
  bool record_timing = false;
};

// Parses a JSON document. Throws ConfigError naming the line and column of
// syntax errors, or the path of the offending field ("sweep.gamma[1]").
// Unknown fields are rejected.
ExperimentConfig ParseExperimentConfig(std::string_view text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Solver options of one (task, method, seed) cell.
PathIntegralOptions MakeOptions(const ExperimentConfig& config, Task task,
                                Method method, std::uint64_t seed,
                                Experiment experiment);

// Task with the configured model overrides and horizon.
TaskInstance MakeConfiguredTask(const ExperimentConfig& config, Task task,
                                Experiment experiment);

}  // namespace pintegra::tools

#endif  // PINTEGRA_TOOLS_EXPERIMENT_CONFIG_H_
