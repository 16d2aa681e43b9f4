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

// pintegra: convergence, MPC and sweep experiments driven by a JSON config.
//
//   pintegra converge|mpc|sweep --config <path> --out <dir> [--threads N]
//
// Exit status: 0 on success, 1 on a configuration error, 2 on a runtime
// failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "experiment_config.h"
#include "pintegra/error.h"
#include "version.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path integral optimization experiments"};
  app.set_version_flag("--version", pintegra::tools::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment JSON file")
        ->required();
    cmd->add_option("--out", out_dir,
                    "output directory (defaults to the config's \"output\")");
    cmd->add_option("--threads", threads, "rollout worker threads")
        ->check(CLI::Range(1, 1024));
  };
  CLI::App* converge =
      app.add_subcommand("converge", "convergence curves with DDP reference");
  CLI::App* mpc = app.add_subcommand("mpc", "closed-loop MPC campaigns");
  CLI::App* sweep = app.add_subcommand("sweep", "hyper-parameter grid");
  add_common(converge);
  add_common(mpc);
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    const pintegra::tools::ExperimentConfig config =
        pintegra::tools::LoadExperimentConfig(config_path);
    pintegra::tools::CommandOptions options;
    options.threads = threads;
    options.out_dir = !out_dir.empty() ? out_dir : config.output;
    if (options.out_dir.empty()) {
      throw pintegra::ConfigError(
          "no output directory: pass --out or set \"output\"");
    }
    if (converge->parsed()) {
      pintegra::tools::RunConverge(config, options);
    } else if (mpc->parsed()) {
      pintegra::tools::RunMpcCampaign(config, options);
    } else if (sweep->parsed()) {
      pintegra::tools::RunSweep(config, options);
    }
  } catch (const pintegra::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return kExitOk;
}
