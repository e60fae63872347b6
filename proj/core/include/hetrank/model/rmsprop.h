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

#ifndef HETRANK_MODEL_RMSPROP_H_
#define HETRANK_MODEL_RMSPROP_H_

#include <cstdint>
#include <vector>

#include "hetrank/model/mlp_scorer.h"

namespace hetrank {

struct RmsPropConfig {
  double learning_rate = 0.01;
  double decay = 0.9;
  double epsilon = 1e-8;

  void Validate() const;
  friend bool operator==(const RmsPropConfig&, const RmsPropConfig&) = default;
};

// Squared-gradient accumulators, one per scorer parameter.
struct OptimizerState {
  RmsPropConfig config;
  std::vector<double> accumulators;
  int64_t step = 0;

  friend bool operator==(const OptimizerState&, const OptimizerState&) =
      default;
};

OptimizerState MakeOptimizerState(const MlpScorer& scorer,
                                  const RmsPropConfig& config);

// acc <- decay * acc + (1 - decay) * g^2
// theta <- theta - lr * g / sqrt(acc + eps)
//
// Throws DivergenceError carrying state.step if any gradient entry is not
// finite; neither the scorer nor the state is modified in that case.
void RmsPropStep(MlpScorer& scorer, const GradientBuffer& grads,
                 OptimizerState& state);

}  // namespace hetrank

#endif  // HETRANK_MODEL_RMSPROP_H_
