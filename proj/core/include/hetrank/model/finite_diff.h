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

#ifndef HETRANK_MODEL_FINITE_DIFF_H_
#define HETRANK_MODEL_FINITE_DIFF_H_

#include <span>

#include "hetrank/model/mlp_scorer.h"

namespace hetrank {

// Max over parameters of |analytic - central| / (|central| + 1e-12), where
// central is (f(theta + eps) - f(theta - eps)) / (2 eps) of upstream * logit.
// The perturbed forward passes run in long double. epsilon must lie in
// (0, 1e-2].
double FiniteDiffCheck(const MlpScorer& scorer, std::span<const double> user,
                       std::span<const double> item, double upstream,
                       double epsilon);

// Same check against a caller-supplied analytic gradient, so a deliberately
// broken backward pass can be shown to fail.
double FiniteDiffCheck(const MlpScorer& scorer, std::span<const double> user,
                       std::span<const double> item, double upstream,
                       double epsilon, const GradientBuffer& analytic);

}  // namespace hetrank

#endif  // HETRANK_MODEL_FINITE_DIFF_H_
