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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"
#include "hetrank/eval/damr_eval.h"
#include "hetrank/eval/metrics.h"
#include "hetrank/experiment/benchmark.h"
#include "oracle/oracle.h"
#include "test_util.h"

namespace hetrank {
namespace {

TEST(Auc, HandCases) {
  EXPECT_EQ(Auc(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0}), 1.0);
  EXPECT_EQ(Auc(std::vector<double>{0.3, 0.3, 0.3}, std::vector<int>{1, 0, 0}),
            0.5);
}

TEST(Auc, SingleClassIsUndefined) {
  try {
    Auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedMetric);
  }
}

TEST(Auc, RankSumMatchesBruteForce) {
  Rng rng = MakeStream(21, {1});
  for (int c = 0; c < 300; ++c) {
    const size_t n = 2 + c % 200;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    std::uniform_int_distribution<int> coarse(0, 9);
    std::normal_distribution<double> fine(0.0, 1.0);
    for (size_t i = 0; i < n; ++i) {
      scores[i] = c % 2 ? coarse(rng) : fine(rng);
      labels[i] = static_cast<int>(i % 3 == 0);
    }
    labels[0] = 1;
    labels[1] = 0;
    EXPECT_NEAR(Auc(scores, labels), oracle::BruteForceAuc(scores, labels),
                1e-12);
    EXPECT_NEAR(BruteForceAuc(scores, labels),
                oracle::BruteForceAuc(scores, labels), 1e-12);
  }
}

TEST(Auc, InvariantUnderMonotoneTransformAndFlipsWithLabels) {
  Rng rng = MakeStream(22, {1});
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> s(80), t(80);
  std::vector<int> y(80), flipped(80);
  for (size_t i = 0; i < s.size(); ++i) {
    s[i] = z(rng);
    t[i] = std::exp(3 * s[i]) + 1;
    y[i] = static_cast<int>(i % 4 == 0);
    flipped[i] = 1 - y[i];
  }
  EXPECT_NEAR(Auc(s, y), Auc(t, y), 1e-15);
  EXPECT_NEAR(Auc(s, flipped), 1.0 - Auc(s, y), 1e-12);
}

ScoredRow Row(int64_t user, int label, double score) {
  return {user, 0, label, score, std::nullopt};
}

TEST(Gauc, PairWeightedAverage) {
  // user 1: 1 pos x 2 neg, perfect. user 2: 2 pos x 3 neg, all tied (0.5).
  const ScoredSet rows = {Row(1, 1, 0.9), Row(1, 0, 0.1), Row(1, 0, 0.2),
                          Row(2, 1, 0.5), Row(2, 1, 0.5), Row(2, 0, 0.5),
                          Row(2, 0, 0.5), Row(2, 0, 0.5)};
  EXPECT_NEAR(Gauc(rows), (2 * 1.0 + 6 * 0.5) / 8, 1e-15);
}

TEST(Gauc, SingleUserEqualsAuc) {
  const ScoredSet rows = {Row(4, 1, 0.3), Row(4, 0, 0.1), Row(4, 0, 0.7),
                          Row(4, 1, 0.8)};
  EXPECT_DOUBLE_EQ(Gauc(rows), Auc(rows));
  const ScoredSet perfect = {Row(1, 1, 2), Row(1, 0, 1), Row(2, 1, 5),
                             Row(2, 0, 0), Row(2, 0, 1)};
  EXPECT_EQ(Gauc(perfect), 1.0);
  EXPECT_THROW(Gauc(ScoredSet{Row(1, 1, 0.2), Row(2, 0, 0.1)}), Error);
}

TEST(LogLoss, HandCases) {
  EXPECT_NEAR(LogLoss(std::vector<double>{0.8, 0.2, 0.5},
                      std::vector<int>{1, 0, 0}),
              -(std::log(0.8) * 2 + std::log(0.5)) / 3, 1e-15);
  EXPECT_NEAR(LogLoss(std::vector<double>{0.5, 0.5}, std::vector<int>{1, 0}),
              std::log(2.0), 1e-15);
  EXPECT_LE(LogLoss(std::vector<double>{1.0, 0.0}, std::vector<int>{1, 0}),
            1e-11);
}

class DamrTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new ExperimentConfig(hetrank::testing::SmallConfig());
    data_ = new BenchmarkData(BuildBenchmarkData(*cfg_, 2));
  }
  static void TearDownTestSuite() {
    delete data_;
    delete cfg_;
  }
  static ExperimentConfig* cfg_;
  static BenchmarkData* data_;
};
ExperimentConfig* DamrTest::cfg_ = nullptr;
BenchmarkData* DamrTest::data_ = nullptr;

TEST_F(DamrTest, IdenticalModelsMakeRoutingIrrelevant) {
  const MlpScorer m =
      InitialModel(*cfg_, CapacityPreset::kLightweight, ModelRole::kScorer, 2);
  const auto& f = data_->world.features();
  const MetricsTable routed = EvaluateDamr(&m, &m, data_->test_sets, f);
  for (TestSetId id : kAllTestSets) {
    const ScoredSet s = ScoreTestSet(data_->test_sets[id], m, m, f);
    EXPECT_EQ(routed[id].auc, Auc(s));
  }
}

TEST_F(DamrTest, HardSetsDependOnlyOnTheExpressiveModel) {
  const MlpScorer light =
      InitialModel(*cfg_, CapacityPreset::kLightweight, ModelRole::kScorer, 2);
  const MlpScorer other =
      InitialModel(*cfg_, CapacityPreset::kLightweight, ModelRole::kScorer, 3);
  const MlpScorer heavy =
      InitialModel(*cfg_, CapacityPreset::kExpressive, ModelRole::kExpert, 2);
  const auto& f = data_->world.features();
  const MetricsTable a = EvaluateDamr(&light, &heavy, data_->test_sets, f);
  const MetricsTable b = EvaluateDamr(&other, &heavy, data_->test_sets, f);
  for (TestSetId id : {TestSetId::kTEN, TestSetId::kTRN, TestSetId::kTHard}) {
    EXPECT_EQ(a[id].auc, b[id].auc);
    EXPECT_EQ(a[id].logloss, b[id].logloss);
  }
  EXPECT_NE(a[TestSetId::kTGN].auc, b[TestSetId::kTGN].auc);
}

TEST_F(DamrTest, MissingModelIsAConfigError) {
  const MlpScorer m =
      InitialModel(*cfg_, CapacityPreset::kLightweight, ModelRole::kScorer, 2);
  try {
    EvaluateDamr(&m, nullptr, data_->test_sets, data_->world.features());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST_F(DamrTest, CsvAndTableLayout) {
  const MlpScorer m =
      InitialModel(*cfg_, CapacityPreset::kLightweight, ModelRole::kScorer, 2);
  const MetricsTable t =
      EvaluateDamr(&m, &m, data_->test_sets, data_->world.features());
  std::ostringstream csv;
  WriteMetricsCsv(csv, t);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "set,positives,negatives,auc,gauc,logloss");
  const std::string table = FormatMetricsTable(t);
  size_t last = 0;
  for (const char* name : {"TEN", "TRN", "TPRN", "TGN", "THard", "TEasy"}) {
    const size_t pos = table.find(name, last);
    ASSERT_NE(pos, std::string::npos) << name;
    last = pos;
  }
}

}  // namespace
}  // namespace hetrank
