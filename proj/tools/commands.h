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

#ifndef PINTEGRA_TOOLS_COMMANDS_H_
#define PINTEGRA_TOOLS_COMMANDS_H_

#include <filesystem>

#include "experiment_config.h"

namespace pintegra::tools {

struct CommandOptions {
  std::filesystem::path out_dir;
  int threads = 1;
};

// Each command writes its CSV files into options.out_dir (created if
// missing). ConfigError signals a bad configuration; any other exception a
// runtime failure.

// convergence.csv, summary.csv and, with DDP enabled, reference.csv.
void RunConverge(const ExperimentConfig& config, const CommandOptions& options);
// mpc_steps.csv, mpc_runs.csv and mpc_summary.csv.
void RunMpcCampaign(const ExperimentConfig& config,
                    const CommandOptions& options);
// sweep.csv.
void RunSweep(const ExperimentConfig& config, const CommandOptions& options);

}  // namespace pintegra::tools

#endif  // PINTEGRA_TOOLS_COMMANDS_H_
