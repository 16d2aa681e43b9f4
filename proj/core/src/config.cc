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

#include "pintegra/config.h"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "pintegra/error.h"

namespace pintegra {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kBaseline:
      return "baseline";
    case Method::kNag:
      return "nag";
    case Method::kAdaGrad:
      return "adagrad";
    case Method::kAdam:
      return "adam";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (Method method : {Method::kBaseline, Method::kNag, Method::kAdaGrad,
                        Method::kAdam}) {
    if (MethodName(method) == name) return method;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected baseline, nag, adagrad or adam)");
}

std::string_view WeightExponentName(WeightExponent exponent) {
  switch (exponent) {
    case WeightExponent::kModifiedCost:
      return "modified_cost";
    case WeightExponent::kLikelihoodRatio:
      return "likelihood_ratio";
    case WeightExponent::kTrajectoryCost:
      return "trajectory_cost";
  }
  return "unknown";
}

WeightExponent ParseWeightExponent(std::string_view name) {
  for (WeightExponent exponent :
       {WeightExponent::kModifiedCost, WeightExponent::kLikelihoodRatio,
        WeightExponent::kTrajectoryCost}) {
    if (WeightExponentName(exponent) == name) return exponent;
  }
  throw ConfigError("unknown weight exponent '" + std::string(name) +
                    "' (expected modified_cost, likelihood_ratio or "
                    "trajectory_cost)");
}

PathIntegralConfig::PathIntegralConfig(PathIntegralOptions options)
    : options_(std::move(options)) {
  const auto& o = options_;
  if (!(o.lambda > 0.0) || !std::isfinite(o.lambda)) {
    throw ConfigError("lambda must be positive and finite");
  }
  if (!(o.gamma >= 0.0 && o.gamma < 1.0)) {
    throw ConfigError("gamma must lie in [0, 1)");
  }
  if (o.num_rollouts < 1) throw ConfigError("K must be at least 1");
  if (o.num_iterations < 0) throw ConfigError("U must be non-negative");
  if (!(o.adagrad_epsilon > 0.0)) {
    throw ConfigError("adagrad_epsilon must be positive");
  }
  if (!(o.adam_beta1 >= 0.0 && o.adam_beta1 < 1.0) ||
      !(o.adam_beta2 >= 0.0 && o.adam_beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(o.adam_epsilon > 0.0) || !(o.adam_alpha > 0.0)) {
    throw ConfigError("adam_epsilon and adam_alpha must be positive");
  }

  const Eigen::MatrixXd& sigma = o.sigma;
  if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
    throw ConfigError("sigma must be a non-empty square matrix");
  }
  if (!sigma.allFinite()) throw ConfigError("sigma must be finite");
  const double scale = sigma.cwiseAbs().maxCoeff();
  if (!(sigma - sigma.transpose()).isZero(1e-12 * (scale > 0 ? scale : 1.0))) {
    throw ConfigError("sigma must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success || !(llt.matrixL().toDenseMatrix()
                                            .diagonal()
                                            .array() > 0.0)
                                           .all()) {
    throw ConfigError("sigma must be positive-definite");
  }
  sigma_cholesky_ = llt.matrixL();
  sigma_inverse_ = llt.solve(
      Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
}

}  // namespace pintegra
