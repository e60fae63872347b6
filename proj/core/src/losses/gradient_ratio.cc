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

#include "hetrank/losses/gradient_ratio.h"

#include <cmath>
#include <limits>
#include <vector>

#include "hetrank/common/error.h"

namespace hetrank {

double LogSumExp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  double m = values[0];
  for (double v : values) m = std::max(m, v);
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - m);
  return m + std::log(sum);
}

double GradientRatioOrg(double hard_score, double easy_score) {
  return std::exp(hard_score - easy_score);
}

double CorrectionFactor(double positive, std::span<const double> hard_scores,
                        std::span<const double> easy_scores) {
  if (hard_scores.empty() || easy_scores.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                "correction factor needs hard and easy scores");
  }
  auto with_positive = [positive](std::span<const double> s) {
    std::vector<double> v;
    v.reserve(s.size() + 1);
    v.push_back(positive);
    v.insert(v.end(), s.begin(), s.end());
    return v;
  };
  const double log_easy = LogSumExp(with_positive(easy_scores));
  const double log_hard = LogSumExp(with_positive(hard_scores));
  return std::exp(log_easy - log_hard);
}

double GradientRatioGhcl(double positive, double hard_score,
                         std::span<const double> hard_scores,
                         double easy_score,
                         std::span<const double> easy_scores) {
  return GradientRatioOrg(hard_score, easy_score) *
         CorrectionFactor(positive, hard_scores, easy_scores);
}

}  // namespace hetrank
