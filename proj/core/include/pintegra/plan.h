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

#ifndef PINTEGRA_PLAN_H_
#define PINTEGRA_PLAN_H_

#include <utility>

#include <Eigen/Core>

#include "pintegra/error.h"

namespace pintegra {

// A finite (controls x horizon) matrix whose shape is fixed at construction.
// Column t holds the m-dimensional entry for timestep t.
template <typename Tag>
class PlanMatrix {
 public:
  PlanMatrix(int controls, int horizon)
      : values_(Eigen::MatrixXd::Zero(controls, horizon)) {
    if (controls <= 0 || horizon <= 0) {
      throw ConfigError("plan dimensions must be positive");
    }
  }

  explicit PlanMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() <= 0 || values_.cols() <= 0) {
      throw ConfigError("plan dimensions must be positive");
    }
    if (!values_.allFinite()) {
      throw ConfigError("plan entries must be finite");
    }
  }

  int controls() const { return static_cast<int>(values_.rows()); }
  int horizon() const { return static_cast<int>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int i, int t) const { return values_(i, t); }

  friend bool operator==(const PlanMatrix& a, const PlanMatrix& b) {
    return a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

struct ControlTag {};
struct MomentumTag {};

// Mean control plan over the horizon.
using ControlSequence = PlanMatrix<ControlTag>;
// Accumulated plan update reused to drift the next sampling distribution.
using Momentum = PlanMatrix<MomentumTag>;

}  // namespace pintegra

#endif  // PINTEGRA_PLAN_H_
