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

#ifndef PINTEGRA_WEIGHTS_H_
#define PINTEGRA_WEIGHTS_H_

#include <span>

#include <Eigen/Core>

#include "pintegra/noise.h"
#include "pintegra/rollout.h"

namespace pintegra {

// Normalized exponential rollout weights; entries in [0, 1] summing to 1.
struct WeightVector {
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int k) const { return values[k]; }
};

// w_k = exp(-(c_k - min c) / lambda) / sum_j exp(-(c_j - min c) / lambda).
// Non-finite costs get weight exactly 0. Throws AllRolloutsDivergedError if
// no cost is finite.
WeightVector ComputeWeights(std::span<const double> costs, double lambda);
WeightVector ComputeWeights(std::span<const Rollout> rollouts, double lambda);

// sum_k w_k eps_k, accumulated in ascending k.
Eigen::MatrixXd WeightedNoiseAverage(const WeightVector& weights,
                                     const NoiseRealization& noise);

}  // namespace pintegra

#endif  // PINTEGRA_WEIGHTS_H_
