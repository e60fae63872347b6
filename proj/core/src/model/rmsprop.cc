// Copyright 2026 The hetrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetrank/model/rmsprop.h"

#include <cmath>
#include <string>

#include "hetrank/common/error.h"
#include "hetrank/model/dense.h"

namespace hetrank {

void RmsPropConfig::Validate() const {
  if (!(learning_rate > 0.0)) {
    throw Error(ErrorCode::kConfig, "learning_rate must be > 0");
  }
  if (!(decay >= 0.0 && decay < 1.0)) {
    throw Error(ErrorCode::kConfig, "decay must be in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kConfig, "epsilon must be > 0");
}

OptimizerState MakeOptimizerState(const MlpScorer& scorer,
                                  const RmsPropConfig& config) {
  config.Validate();
  OptimizerState state;
  state.config = config;
  state.accumulators.assign(scorer.parameter_count(), 0.0);
  return state;
}

void RmsPropStep(MlpScorer& scorer, const GradientBuffer& grads,
                 OptimizerState& state) {
  if (!grads.CongruentWith(scorer.layer_dims()) ||
      state.accumulators.size() != scorer.parameter_count()) {
    throw Error(ErrorCode::kShape, "optimizer shapes are not congruent");
  }
  const auto g = grads.values();
  if (!AllFinite(g)) {
    throw DivergenceError(state.step, "non-finite gradient entry");
  }
  const double decay = state.config.decay;
  const double lr = state.config.learning_rate;
  const double eps = state.config.epsilon;
  auto theta = scorer.mutable_parameters();
  for (size_t i = 0; i < theta.size(); ++i) {
    double& acc = state.accumulators[i];
    acc = decay * acc + (1.0 - decay) * g[i] * g[i];
    theta[i] -= lr * g[i] / std::sqrt(acc + eps);
  }
  ++state.step;
}

}  // namespace hetrank
