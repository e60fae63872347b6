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

#include "hetrank/eval/damr_eval.h"

#include <cstdio>
#include <sstream>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

bool IsHardSet(TestSetId id) {
  return id == TestSetId::kTEN || id == TestSetId::kTRN ||
         id == TestSetId::kTHard;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string_view PositiveScoringName(PositiveScoring p) {
  switch (p) {
    case PositiveScoring::kSetModel:
      return "set_model";
    case PositiveScoring::kLightweight:
      return "lightweight";
    case PositiveScoring::kExpressive:
      return "expressive";
  }
  return "unknown";
}

std::optional<PositiveScoring> ParsePositiveScoring(std::string_view name) {
  if (name == "set_model") return PositiveScoring::kSetModel;
  if (name == "lightweight") return PositiveScoring::kLightweight;
  if (name == "expressive") return PositiveScoring::kExpressive;
  return std::nullopt;
}

ScoredSet ScoreTestSet(const TestSet& set, const MlpScorer& negatives_model,
                       const MlpScorer& positives_model,
                       const FeatureTable& features) {
  ScoredSet out;
  out.reserve(set.rows.size());
  for (const LabeledSample& s : set.rows) {
    const MlpScorer& m = s.label == 1 ? positives_model : negatives_model;
    out.push_back({s.user_id, s.item_id, s.label,
                   m.Forward(features.user(s.user_id), features.item(s.item_id)),
                   ToNegativeType(s.type)});
  }
  return out;
}

MetricsTable EvaluateDamr(const MlpScorer* light, const MlpScorer* complex,
                          const TestSets& test_sets,
                          const FeatureTable& features,
                          const DamrEvalConfig& cfg) {
  if (light == nullptr || complex == nullptr) {
    throw Error(ErrorCode::kConfig,
                "evaluation needs both a lightweight and an expressive model");
  }
  MetricsTable table;
  for (TestSetId id : kAllTestSets) {
    const MlpScorer& neg_model = IsHardSet(id) ? *complex : *light;
    const MlpScorer* pos_model = &neg_model;
    if (cfg.positives == PositiveScoring::kLightweight) pos_model = light;
    if (cfg.positives == PositiveScoring::kExpressive) pos_model = complex;
    const TestSet& set = test_sets[id];
    const ScoredSet scored = ScoreTestSet(set, neg_model, *pos_model, features);
    SetMetrics& m = table.sets[static_cast<size_t>(id)];
    m.id = id;
    m.positives = set.num_positives();
    m.negatives = set.num_negatives();
    m.auc = Auc(scored);
    if (cfg.gauc_on) m.gauc = Gauc(scored);
    m.logloss = LogLoss(scored);
  }
  return table;
}

void WriteMetricsCsv(std::ostream& out, const MetricsTable& table) {
  out << "set,positives,negatives,auc,gauc,logloss\n";
  for (const SetMetrics& m : table.sets) {
    out << TestSetName(m.id) << ',' << m.positives << ',' << m.negatives << ','
        << Fixed(m.auc, 6) << ',' << (m.gauc ? Fixed(*m.gauc, 6) : "") << ','
        << Fixed(m.logloss, 6) << '\n';
  }
}

std::string FormatMetricsTable(const MetricsTable& table) {
  constexpr size_t kWidth = 9;
  std::ostringstream out;
  out << Pad("", kWidth);
  for (const SetMetrics& m : table.sets) out << Pad(TestSetName(m.id), kWidth);
  out << '\n' << Pad("AUC", kWidth);
  for (const SetMetrics& m : table.sets) out << Pad(Fixed(m.auc, 4), kWidth);
  out << '\n' << Pad("GAUC", kWidth);
  for (const SetMetrics& m : table.sets) {
    out << Pad(m.gauc ? Fixed(*m.gauc, 4) : "--", kWidth);
  }
  out << '\n' << Pad("LogLoss", kWidth);
  for (const SetMetrics& m : table.sets) {
    out << Pad(Fixed(m.logloss, 4), kWidth);
  }
  out << '\n';
  return out.str();
}

std::string FormatAucComparison(
    std::span<const std::pair<std::string, MetricsTable>> rows) {
  size_t name_width = 6;
  for (const auto& [name, t] : rows) name_width = std::max(name_width, name.size());
  constexpr size_t kWidth = 9;
  std::ostringstream out;
  out << std::string(name_width, ' ');
  for (TestSetId id : kAllTestSets) out << Pad(TestSetName(id), kWidth);
  out << '\n';
  for (const auto& [name, t] : rows) {
    out << name << std::string(name_width - name.size(), ' ');
    for (const SetMetrics& m : t.sets) out << Pad(Fixed(m.auc, 4), kWidth);
    out << '\n';
  }
  return out.str();
}

}  // namespace hetrank
