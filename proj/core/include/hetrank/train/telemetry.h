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

#ifndef HETRANK_TRAIN_TELEMETRY_H_
#define HETRANK_TRAIN_TELEMETRY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "hetrank/losses/negative_type.h"
#include "hetrank/model/mlp_scorer.h"

namespace hetrank {

// One telemetry sample. Types absent from the measured batch have no norm,
// no logit mean and no cosine entries. Cosines involving a zero-norm gradient
// are absent rather than NaN.
struct TelemetryEntry {
  int64_t step = 0;
  std::array<std::optional<double>, kNumNegativeTypes> norm;
  std::array<std::optional<double>, kNumNegativeTypes> logit_mean;
  std::array<std::array<std::optional<double>, kNumNegativeTypes>,
             kNumNegativeTypes>
      cosine;

  // Cosine against the EN gradient; absent for EN itself.
  std::optional<double> CosineVsEn(NegativeType t) const;
};

// Norms and the full pairwise cosine matrix of the given per-type parameter
// gradients. Throws invalid-input when no type is present.
TelemetryEntry GradientStats(
    std::span<const std::optional<GradientBuffer>, kNumNegativeTypes> grads);

// Rows: step,type,norm,logit_mean,cosine_vs_EN. Absent values are empty.
void WriteTelemetryCsv(std::ostream& out,
                       std::span<const TelemetryEntry> entries);

// Window summaries used by the benchmark criteria.
struct TelemetrySummary {
  std::array<std::optional<double>, kNumNegativeTypes> mean_norm;
  std::array<std::optional<double>, kNumNegativeTypes> mean_logit;
  // Mean over entries of min_t cosine(g_t, g_EN), t != EN.
  std::optional<double> mean_min_cosine_vs_en;
  // Mean over entries of max_t norm / min_t norm.
  std::optional<double> mean_norm_ratio;
  size_t entries = 0;
};

// Averages the entries with first_step <= step < end_step.
TelemetrySummary SummarizeTelemetry(std::span<const TelemetryEntry> entries,
                                    int64_t first_step, int64_t end_step);

}  // namespace hetrank

#endif  // HETRANK_TRAIN_TELEMETRY_H_
