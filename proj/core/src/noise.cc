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

#include "pintegra/noise.h"

#include <random>

#include "pintegra/thread_pool.h"

namespace pintegra {

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void SampleNoiseInto(const PathIntegralConfig& config, int horizon,
                     std::uint64_t seed, NoiseRealization& out,
                     ThreadPool* pool) {
  const int m = config.control_dim();
  const int k_total = config.num_rollouts();
  out.seed = seed;
  out.epsilon.resize(k_total);
  const Eigen::MatrixXd& chol = config.sigma_cholesky();
  ParallelFor(pool, k_total, [&](int k) {
    Eigen::MatrixXd& eps = out.epsilon[k];
    eps.resize(m, horizon);
    std::mt19937_64 engine(DeriveSeed(seed, static_cast<std::uint64_t>(k)));
    std::normal_distribution<double> normal(0.0, 1.0);
    // Column-major fill: channel fastest, then time.
    for (int t = 0; t < horizon; ++t) {
      for (int i = 0; i < m; ++i) eps(i, t) = normal(engine);
    }
    eps = chol.triangularView<Eigen::Lower>() * eps;
  });
}

NoiseRealization SampleNoise(const PathIntegralConfig& config, int horizon,
                             std::uint64_t seed, ThreadPool* pool) {
  NoiseRealization noise;
  SampleNoiseInto(config, horizon, seed, noise, pool);
  return noise;
}

}  // namespace pintegra
