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

#ifndef HETRANK_LOSSES_LOSSES_H_
#define HETRANK_LOSSES_LOSSES_H_

#include <array>
#include <map>
#include <span>
#include <vector>

#include "hetrank/losses/negative_type.h"

namespace hetrank {

// One positive score against negatives partitioned by type. Empty groups are
// allowed and simply contribute no term.
struct GroupedLogits {
  double positive = 0.0;
  std::array<std::vector<double>, kNumNegativeTypes> negatives;

  const std::vector<double>& of(NegativeType t) const {
    return negatives[Index(t)];
  }
  std::vector<double>& of(NegativeType t) { return negatives[Index(t)]; }
  size_t total_negatives() const;
  size_t hard_count() const;
  size_t easy_count() const;
};

enum class LossTerm { kEN, kRN, kPRN, kGN, kHard, kEasy, kPooled, kGlobal };

LossTerm TermFor(NegativeType t);

// Loss value, its named components and the gradient with respect to every
// input logit. per_term stores unweighted component losses; total is the
// weighted sum documented by the producing function.
struct LossBreakdown {
  double total = 0.0;
  std::map<LossTerm, double> per_term;
  double grad_positive = 0.0;
  std::array<std::vector<double>, kNumNegativeTypes> grad_negatives;
  // Set when no term applied (e.g. the expressive objective with no hard
  // negatives); total and all gradients are then zero.
  bool skipped = false;

  const std::vector<double>& grads(NegativeType t) const {
    return grad_negatives[Index(t)];
  }
};

struct BceResult {
  double loss = 0.0;
  std::vector<double> grads;
};

struct InfoNceResult {
  double loss = 0.0;
  double grad_positive = 0.0;
  std::vector<double> grad_negatives;
};

// Per-type weights for the lightweight objective (and the EN/RN pair for the
// expressive one). All default to 1.
struct TypeWeights {
  std::array<double, kNumNegativeTypes> lambda = {1.0, 1.0, 1.0, 1.0};

  double operator[](NegativeType t) const { return lambda[Index(t)]; }
  double& operator[](NegativeType t) { return lambda[Index(t)]; }
  void Validate() const;
};

double Sigmoid(double z);

// Summed binary cross-entropy; grad_i = sigmoid(z_i) - y_i. The 1e-12 clamp
// applies only inside the logarithms.
BceResult BceLossAndGrad(std::span<const double> logits,
                         std::span<const int> labels);

// -log(e^{s+} / (e^{s+} + sum_j e^{s_j})) with a max shift. Scores are divided
// by `temperature` first (1 reproduces the raw-score form); gradients are with
// respect to the unscaled scores.
InfoNceResult InfoNceLossAndGrad(double positive,
                                 std::span<const double> negatives,
                                 double temperature = 1.0);

// Single softmax over every negative regardless of type.
LossBreakdown PooledInfoNce(const GroupedLogits& g, double temperature = 1.0);

// L_hard + L_easy: two independent softmaxes over {EN, RN} and {PRN, GN}
// sharing the positive, whose gradient is the sum of both. A missing side is
// dropped; throws invalid-input when both sides are empty.
LossBreakdown GhclLossAndGrad(const GroupedLogits& g, double temperature = 1.0);

// One InfoNCE per non-empty type against the shared positive.
std::map<NegativeType, InfoNceResult> PerTypeInfoNce(const GroupedLogits& g,
                                                     double temperature = 1.0);

// sum_t lambda_t * L_t over all four types. Throws a config error on negative
// weights.
LossBreakdown CombinedLight(const GroupedLogits& g, const TypeWeights& lambda,
                            double temperature = 1.0);

// lambda_EN * L_EN + lambda_RN * L_RN; PRN and GN never receive gradient.
// Without hard negatives the result is zero and flagged as skipped.
LossBreakdown CombinedComplex(const GroupedLogits& g, double lambda_en,
                              double lambda_rn, double temperature = 1.0);

// Mean BCE over the batch; grads are divided by |B| accordingly.
BceResult GlobalBce(std::span<const double> logits, std::span<const int> labels);

// L_light + L_complex + alpha * L_global. Throws a config error if alpha < 0.
double TotalObjective(const LossBreakdown& light, const LossBreakdown& complex,
                      double global, double alpha);

}  // namespace hetrank

#endif  // HETRANK_LOSSES_LOSSES_H_
