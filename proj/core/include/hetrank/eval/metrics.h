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

#ifndef HETRANK_EVAL_METRICS_H_
#define HETRANK_EVAL_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetrank/losses/negative_type.h"

namespace hetrank {

struct ScoredRow {
  int64_t user_id = 0;
  int32_t item_id = 0;
  int label = 0;
  // Raw model logit. Rank metrics only use its order.
  double score = 0.0;
  std::optional<NegativeType> neg_type;
};

using ScoredSet = std::vector<ScoredRow>;

// Rank-sum AUC with mid-ranks for ties. Throws undefined-metric when either
// class is missing and invalid-input on labels outside {0, 1}.
double Auc(std::span<const double> scores, std::span<const int> labels);
double Auc(std::span<const ScoredRow> rows);

// O(n^2) pairwise reference; ties count one half.
double BruteForceAuc(std::span<const double> scores,
                     std::span<const int> labels);

// Sum_u w_u AUC_u / sum_u w_u, w_u = #pos_u * #neg_u. Users lacking a class
// are skipped; throws undefined-metric when none is left.
double Gauc(std::span<const ScoredRow> rows);

// Mean binary cross-entropy of probabilities clamped to [1e-12, 1 - 1e-12].
double LogLoss(std::span<const double> probabilities,
               std::span<const int> labels);
// Same, with each row's logit mapped through the sigmoid first.
double LogLoss(std::span<const ScoredRow> rows);

}  // namespace hetrank

#endif  // HETRANK_EVAL_METRICS_H_
