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

#ifndef HETRANK_EVAL_DAMR_EVAL_H_
#define HETRANK_EVAL_DAMR_EVAL_H_

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "hetrank/eval/metrics.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/sim/samples.h"
#include "hetrank/sim/world.h"

namespace hetrank {

// Which model scores the positives of a test set. kSetModel uses the model
// that scores the set's negatives, so scores within a set are comparable.
enum class PositiveScoring { kSetModel, kLightweight, kExpressive };
std::string_view PositiveScoringName(PositiveScoring p);
std::optional<PositiveScoring> ParsePositiveScoring(std::string_view name);

struct DamrEvalConfig {
  bool gauc_on = true;
  PositiveScoring positives = PositiveScoring::kSetModel;
};

struct SetMetrics {
  TestSetId id = TestSetId::kTEN;
  size_t positives = 0;
  size_t negatives = 0;
  double auc = 0.0;
  std::optional<double> gauc;
  double logloss = 0.0;
};

struct MetricsTable {
  std::array<SetMetrics, 6> sets;

  const SetMetrics& operator[](TestSetId id) const {
    return sets[static_cast<size_t>(id)];
  }
};

// Hard sets (TEN, TRN, THard) go to the expressive model, easy sets (TPRN,
// TGN, TEasy) to the lightweight one. Throws a config error when either
// model is null.
MetricsTable EvaluateDamr(const MlpScorer* light, const MlpScorer* complex,
                          const TestSets& test_sets,
                          const FeatureTable& features,
                          const DamrEvalConfig& cfg = {});

// Scores one test set with a fixed negative model and positive model.
ScoredSet ScoreTestSet(const TestSet& set, const MlpScorer& negatives_model,
                       const MlpScorer& positives_model,
                       const FeatureTable& features);

// set,positives,negatives,auc,gauc,logloss in the column order of the table.
void WriteMetricsCsv(std::ostream& out, const MetricsTable& table);

// Metrics as rows, test sets as columns.
std::string FormatMetricsTable(const MetricsTable& table);

// One AUC row per named model.
std::string FormatAucComparison(
    std::span<const std::pair<std::string, MetricsTable>> rows);

}  // namespace hetrank

#endif  // HETRANK_EVAL_DAMR_EVAL_H_
