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

#ifndef PINTEGRA_NOISE_H_
#define PINTEGRA_NOISE_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "pintegra/config.h"

namespace pintegra {

class ThreadPool;

// K Gaussian perturbation plans, each (m x T), plus the seed that produced
// them. Column t of epsilon[k] is an independent draw from N(0, Sigma).
struct NoiseRealization {
  std::vector<Eigen::MatrixXd> epsilon;
  std::uint64_t seed = 0;

  int rollouts() const { return static_cast<int>(epsilon.size()); }
};

// Mixes a stream index into a seed (splitmix64 finalizer over the sum).
// Distinct (seed, stream) pairs give statistically independent seeds.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Draws config.num_rollouts() plans of length horizon. Rollout k uses its own
// engine seeded with DeriveSeed(seed, k), so the result does not depend on
// the pool size.
NoiseRealization SampleNoise(const PathIntegralConfig& config, int horizon,
                             std::uint64_t seed, ThreadPool* pool = nullptr);

// Same as SampleNoise but reuses the storage in out.
void SampleNoiseInto(const PathIntegralConfig& config, int horizon,
                     std::uint64_t seed, NoiseRealization& out,
                     ThreadPool* pool = nullptr);

}  // namespace pintegra

#endif  // PINTEGRA_NOISE_H_
