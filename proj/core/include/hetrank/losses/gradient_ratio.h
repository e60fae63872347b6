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

#ifndef HETRANK_LOSSES_GRADIENT_RATIO_H_
#define HETRANK_LOSSES_GRADIENT_RATIO_H_

#include <span>

namespace hetrank {

// Hard-to-easy gradient ratio under a single pooled softmax: e^{s_hk - s_ek}.
double GradientRatioOrg(double hard_score, double easy_score);

// (e^{s_p} + sum_easy e^s) / (e^{s_p} + sum_hard e^s), evaluated in log space.
// Below 1 exactly when the hard partition sum exceeds the easy one. Throws
// invalid-input if either list is empty.
double CorrectionFactor(double positive, std::span<const double> hard_scores,
                        std::span<const double> easy_scores);

// GradientRatioOrg(s_hk, s_ek) * CorrectionFactor(s_p, hard, easy). When s_hk
// belongs to hard_scores and s_ek to easy_scores this equals the ratio of the
// two negatives' gradients under the split loss.
double GradientRatioGhcl(double positive, double hard_score,
                         std::span<const double> hard_scores,
                         double easy_score,
                         std::span<const double> easy_scores);

// log(sum_i e^{x_i}) with a max shift; -inf for an empty list.
double LogSumExp(std::span<const double> values);

}  // namespace hetrank

#endif  // HETRANK_LOSSES_GRADIENT_RATIO_H_
