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

#ifndef PINTEGRA_CONFIG_H_
#define PINTEGRA_CONFIG_H_

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace pintegra {

enum class Method { kBaseline, kNag, kAdaGrad, kAdam };

std::string_view MethodName(Method method);
// Accepts the lowercase names returned by MethodName. Throws ConfigError.
Method ParseMethod(std::string_view name);

// How a rollout's sampled noise enters the exponent of its weight.
enum class WeightExponent {
  // S_x + sum_t nu_t' R eps_t with R = lambda Sigma^-1 / 2.
  kModifiedCost,
  // S_x + lambda sum_t nu_t' Sigma^-1 eps_t, the exact Gaussian log-likelihood
  // ratio against the zero-mean density up to a rollout-independent constant.
  kLikelihoodRatio,
  // S_x + sum_t u_t' R_task u_t, the trajectory cost of the sampled controls.
  kTrajectoryCost,
};

std::string_view WeightExponentName(WeightExponent exponent);
WeightExponent ParseWeightExponent(std::string_view name);

struct PathIntegralOptions {
  double lambda = 0.01;
  int num_rollouts = 1000;
  int num_iterations = 100;
  double gamma = 0.8;
  Eigen::MatrixXd sigma;
  Method method = Method::kNag;
  std::uint64_t seed = 0;
  WeightExponent exponent = WeightExponent::kModifiedCost;

  double adagrad_epsilon = 1e-8;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double adam_alpha = 1.0;
};

// Validated path integral hyper-parameters. Construction throws ConfigError
// unless lambda > 0, 0 <= gamma < 1, K >= 1, U >= 0 and sigma is symmetric
// positive-definite.
class PathIntegralConfig {
 public:
  explicit PathIntegralConfig(PathIntegralOptions options);

  const PathIntegralOptions& options() const { return options_; }
  double lambda() const { return options_.lambda; }
  int num_rollouts() const { return options_.num_rollouts; }
  int num_iterations() const { return options_.num_iterations; }
  double gamma() const { return options_.gamma; }
  Method method() const { return options_.method; }
  std::uint64_t seed() const { return options_.seed; }
  WeightExponent exponent() const { return options_.exponent; }
  int control_dim() const { return static_cast<int>(options_.sigma.rows()); }

  const Eigen::MatrixXd& sigma() const { return options_.sigma; }
  // Lower-triangular L with sigma = L L'.
  const Eigen::MatrixXd& sigma_cholesky() const { return sigma_cholesky_; }
  const Eigen::MatrixXd& sigma_inverse() const { return sigma_inverse_; }

 private:
  PathIntegralOptions options_;
  Eigen::MatrixXd sigma_cholesky_;
  Eigen::MatrixXd sigma_inverse_;
};

}  // namespace pintegra

#endif  // PINTEGRA_CONFIG_H_
