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

#ifndef PINTEGRA_ERROR_H_
#define PINTEGRA_ERROR_H_

#include <stdexcept>
#include <string>

namespace pintegra {

// Invalid hyper-parameters, model parameters or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every sampled rollout diverged, so no weighted update can be formed.
class AllRolloutsDivergedError : public std::runtime_error {
 public:
  AllRolloutsDivergedError()
      : std::runtime_error("all rollouts diverged; no finite trajectory cost") {}
};

// Finite differences produced a non-finite derivative.
class DerivativeError : public std::runtime_error {
 public:
  DerivativeError(const std::string& what, int timestep)
      : std::runtime_error(what + " at timestep " + std::to_string(timestep)),
        timestep_(timestep) {}
  int timestep() const { return timestep_; }

 private:
  int timestep_;
};

}  // namespace pintegra

#endif  // PINTEGRA_ERROR_H_
