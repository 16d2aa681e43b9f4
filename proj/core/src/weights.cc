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

#include "pintegra/weights.h"

#include <cmath>
#include <limits>
#include <vector>

#include "pintegra/error.h"

namespace pintegra {

WeightVector ComputeWeights(std::span<const double> costs, double lambda) {
  double min_cost = std::numeric_limits<double>::infinity();
  for (double c : costs) {
    if (std::isfinite(c) && c < min_cost) min_cost = c;
  }
  if (!std::isfinite(min_cost)) throw AllRolloutsDivergedError();

  WeightVector w;
  w.values.resize(static_cast<Eigen::Index>(costs.size()));
  double total = 0.0;
  for (std::size_t k = 0; k < costs.size(); ++k) {
    const double c = costs[k];
    const double value =
        std::isfinite(c) ? std::exp(-(c - min_cost) / lambda) : 0.0;
    w.values[k] = value;
    total += value;
  }
  w.values /= total;
  return w;
}

WeightVector ComputeWeights(std::span<const Rollout> rollouts, double lambda) {
  std::vector<double> costs;
  costs.reserve(rollouts.size());
  for (const Rollout& r : rollouts) {
    costs.push_back(r.divergent ? std::numeric_limits<double>::infinity()
                                : r.modified_cost);
  }
  return ComputeWeights(costs, lambda);
}

Eigen::MatrixXd WeightedNoiseAverage(const WeightVector& weights,
                                     const NoiseRealization& noise) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(noise.epsilon.front().rows(),
                                              noise.epsilon.front().cols());
  for (int k = 0; k < weights.size(); ++k) {
    if (weights[k] != 0.0) sum.noalias() += weights[k] * noise.epsilon[k];
  }
  return sum;
}

}  // namespace pintegra
