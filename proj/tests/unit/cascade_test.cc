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

#include <algorithm>
#include <set>

#include "hetrank/cascade/cascade.h"
#include "hetrank/common/error.h"
#include "hetrank/experiment/benchmark.h"
#include "test_util.h"

namespace hetrank {
namespace {

class CascadeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new ExperimentConfig(hetrank::testing::SmallConfig());
    data_ = new BenchmarkData(BuildBenchmarkData(*cfg_, 3));
    light_ = new MlpScorer(InitialModel(*cfg_, CapacityPreset::kLightweight,
                                        ModelRole::kScorer, 3));
    heavy_ = new MlpScorer(InitialModel(*cfg_, CapacityPreset::kExpressive,
                                        ModelRole::kExpert, 3));
  }
  static void TearDownTestSuite() {
    delete heavy_;
    delete light_;
    delete data_;
    delete cfg_;
  }
  static const Request& Req(size_t i) { return data_->split.test[i]; }
  static std::span<const Request> Requests(size_t n) {
    return {data_->split.test.data(), n};
  }
  static std::vector<int32_t> TopByLight(const Request& r, size_t k) {
    std::vector<double> s;
    for (int32_t item : r.retrieval) {
      s.push_back(light_->Forward(data_->world.features().user(r.user_id),
                                  data_->world.features().item(item)));
    }
    auto ranked = RankByScore(r.retrieval, s);
    ranked.resize(k);
    return ranked;
  }

  static ExperimentConfig* cfg_;
  static BenchmarkData* data_;
  static MlpScorer* light_;
  static MlpScorer* heavy_;
};
ExperimentConfig* CascadeTest::cfg_ = nullptr;
BenchmarkData* CascadeTest::data_ = nullptr;
MlpScorer* CascadeTest::light_ = nullptr;
MlpScorer* CascadeTest::heavy_ = nullptr;

CostModel NoFailures() {
  CostModel c;
  c.failures_enabled = false;
  return c;
}

TEST(RankByScore, TiesBreakTowardLowerItemId) {
  const std::vector<int32_t> items{9, 3, 5, 1};
  const std::vector<double> scores{0.5, 0.5, 0.9, 0.1};
  EXPECT_EQ(RankByScore(items, scores), (std::vector<int32_t>{5, 3, 9, 1}));
}

TEST_F(CascadeTest, FullGateEqualsExpressiveRanking) {
  const Request& r = Req(0);
  const auto n = static_cast<int64_t>(r.retrieval.size());
  const ServeResult full = Serve(r, *light_, *heavy_, data_->world.features(),
                                 {n, 50}, NoFailures(), 0);
  const ServeResult direct = Serve(r, *heavy_, *heavy_, data_->world.features(),
                                   {n, 50}, NoFailures(), 0);
  EXPECT_EQ(full.items, direct.items);
}

TEST_F(CascadeTest, GateOfFinalKPermutesTheLightweightTop) {
  const Request& r = Req(1);
  const ServeResult s = Serve(r, *light_, *heavy_, data_->world.features(),
                              {50, 50}, NoFailures(), 0);
  const auto top = TopByLight(r, 50);
  EXPECT_EQ(std::set<int32_t>(s.items.begin(), s.items.end()),
            std::set<int32_t>(top.begin(), top.end()));
}

TEST_F(CascadeTest, ForwardedSetsGrowWithTheGate) {
  const Request& r = Req(2);
  const auto small = TopByLight(r, 100);
  const auto large = TopByLight(r, 300);
  EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
}

TEST_F(CascadeTest, FlopsIdentityAndClamping) {
  const int64_t fl = CountFlops(*light_), fc = CountFlops(*heavy_);
  for (size_t i = 0; i < 10; ++i) {
    const Request& r = Req(i);
    const auto n = static_cast<int64_t>(r.retrieval.size());
    for (int64_t G : {50L, 137L, n, n + 10}) {
      const ServeResult s = Serve(r, *light_, *heavy_, data_->world.features(),
                                  {G, 50}, CostModel{}, 0);
      EXPECT_EQ(s.flops, n * fl + std::min(G, n) * fc);
      EXPECT_EQ(s.clamped, G > n);
      EXPECT_EQ(s.items.size(), 50u);
    }
  }
}

TEST_F(CascadeTest, FailureFreeLatencyIsAffineAndIncreasing) {
  const std::vector<int64_t> G{50, 100, 200, 400, 800};
  const auto rows = SweepGate(Requests(20), *light_, *heavy_, data_->world, G,
                              50, NoFailures(), 0);
  ASSERT_EQ(rows.size(), G.size());
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].latency_ms, rows[i - 1].latency_ms);
    EXPECT_EQ(rows[i].failure_rate, 0.0);
  }
  const double slope = (rows[1].latency_ms - rows[0].latency_ms) / 50.0;
  for (size_t i = 2; i < rows.size(); ++i) {
    EXPECT_NEAR((rows[i].latency_ms - rows[0].latency_ms) / (G[i] - 50), slope,
                1e-9);
  }
}

TEST_F(CascadeTest, SweepIsOrderIndependentAndCsvHasDocumentedColumns) {
  const auto a = SweepGate(Requests(15), *light_, *heavy_, data_->world,
                           std::vector<int64_t>{50, 400}, 50, CostModel{}, 0);
  const auto b = SweepGate(Requests(15), *light_, *heavy_, data_->world,
                           std::vector<int64_t>{400, 50}, 50, CostModel{}, 0);
  EXPECT_EQ(a[0].engagement, b[1].engagement);
  EXPECT_EQ(a[1].latency_ms, b[0].latency_ms);
  std::ostringstream csv;
  WriteSweepCsv(csv, a);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "G,engagement,latency_ms,failure_rate,megaflops");
  EXPECT_THROW(SweepGate(Requests(3), *light_, *heavy_, data_->world, {}, 50,
                         CostModel{}, 0),
               Error);
}

TEST_F(CascadeTest, SingleGateSvgIsStillWellFormed) {
  const auto rows = SweepGate(Requests(5), *light_, *heavy_, data_->world,
                              std::vector<int64_t>{100}, 50, CostModel{}, 0);
  const std::string svg = RenderSweepSvg(rows);
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos,
            true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST_F(CascadeTest, CompareUnifiedReportsBothSystems) {
  const auto report =
      CompareUnified(Requests(20), data_->test_sets, *heavy_, *light_, *heavy_,
                     data_->world, {550, 50}, CostModel{}, 0);
  EXPECT_LT(report.hap.megaflops_per_request,
            report.unified.megaflops_per_request);
  EXPECT_EQ(report.unified.name, "unified");
  EXPECT_EQ(report.hap.name, "hap");
}

TEST(GateConfig, Validation) {
  EXPECT_THROW((GateConfig{10, 50}.Validate()), Error);
  EXPECT_THROW((GateConfig{10, 0}.Validate()), Error);
  CostModel c;
  c.ms_per_megaflop = -1;
  EXPECT_THROW(c.Validate(), Error);
}

}  // namespace
}  // namespace hetrank
