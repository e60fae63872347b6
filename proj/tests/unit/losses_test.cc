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
#include <numbers>
#include <random>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"
#include "hetrank/losses/gradient_ratio.h"
#include "hetrank/losses/losses.h"
#include "oracle/oracle.h"

namespace hetrank {
namespace {

constexpr double kE = std::numbers::e;
using NT = NegativeType;

GroupedLogits RandomGroups(Rng& rng, size_t min_per_type = 0) {
  std::uniform_real_distribution<double> score(-3.0, 3.0);
  std::uniform_int_distribution<size_t> count(min_per_type, 5);
  GroupedLogits g;
  g.positive = score(rng);
  for (NT t : kAllNegativeTypes) {
    g.of(t).resize(count(rng));
    for (double& s : g.of(t)) s = score(rng);
  }
  if (g.total_negatives() == 0) g.of(NT::kGN).push_back(score(rng));
  return g;
}

double GradSum(const LossBreakdown& b) {
  double s = b.grad_positive;
  for (NT t : kAllNegativeTypes) {
    for (double g : b.grads(t)) s += g;
  }
  return s;
}

TEST(Bce, HandValues) {
  const std::vector<double> z{0.0};
  const BceResult neg = BceLossAndGrad(z, std::vector<int>{0});
  EXPECT_NEAR(neg.loss, std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(neg.grads[0], 0.5);
  EXPECT_DOUBLE_EQ(BceLossAndGrad(z, std::vector<int>{1}).grads[0], -0.5);
}

TEST(Bce, HarderNegativesGetLargerGradients) {
  const BceResult r = BceLossAndGrad(std::vector<double>{2, 0, -2},
                                     std::vector<int>{0, 0, 0});
  EXPECT_GT(r.grads[0], r.grads[1]);
  EXPECT_GT(r.grads[1], r.grads[2]);
}

TEST(Bce, RejectsMismatchedInput) {
  EXPECT_THROW(BceLossAndGrad(std::vector<double>{}, std::vector<int>{}),
               Error);
  EXPECT_THROW(BceLossAndGrad(std::vector<double>{1}, std::vector<int>{0, 1}),
               Error);
}

TEST(InfoNce, UniformSoftmax) {
  const InfoNceResult r = InfoNceLossAndGrad(0.0, std::vector<double>{0, 0});
  EXPECT_NEAR(r.loss, std::log(3.0), 1e-15);
  EXPECT_NEAR(r.grad_negatives[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.grad_negatives[1], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.grad_positive, -2.0 / 3, 1e-15);
}

TEST(InfoNce, SoftmaxWeightsAgainstOracle) {
  const InfoNceResult r = InfoNceLossAndGrad(1.0, std::vector<double>{2, 0});
  const double z = kE + kE * kE + 1.0;
  EXPECT_NEAR(r.grad_negatives[0], kE * kE / z, 1e-15);
  EXPECT_NEAR(r.grad_negatives[1], 1.0 / z, 1e-15);
  EXPECT_NEAR(r.grad_negatives[0], 0.6652, 5e-5);
  EXPECT_NEAR(r.grad_negatives[1], 0.0900, 5e-5);
  EXPECT_NEAR(r.loss, static_cast<double>(oracle::InfoNce(1, {2, 0})), 1e-15);
}

TEST(InfoNce, StableForExtremeScores) {
  for (double s : {-80.0, 80.0}) {
    const InfoNceResult r =
        InfoNceLossAndGrad(s, std::vector<double>{-s, s, 0.0});
    EXPECT_TRUE(std::isfinite(r.loss));
    EXPECT_TRUE(std::isfinite(r.grad_positive));
    for (double g : r.grad_negatives) EXPECT_TRUE(std::isfinite(g));
  }
}

TEST(InfoNce, RequiresNegativesAndPositiveTemperature) {
  EXPECT_THROW(InfoNceLossAndGrad(0.0, std::vector<double>{}), Error);
  EXPECT_THROW(InfoNceLossAndGrad(0.0, std::vector<double>{1}, 0.0), Error);
}

TEST(Ghcl, SingleGroupMatchesPlainInfoNce) {
  GroupedLogits g;
  g.positive = 0.4;
  g.of(NT::kGN) = {1.0, -0.5, 0.2};
  const LossBreakdown b = GhclLossAndGrad(g);
  const InfoNceResult r = InfoNceLossAndGrad(0.4, g.of(NT::kGN));
  EXPECT_DOUBLE_EQ(b.total, r.loss);
  EXPECT_DOUBLE_EQ(b.grad_positive, r.grad_positive);
  EXPECT_EQ(b.grads(NT::kGN), r.grad_negatives);
}

TEST(Ghcl, HandExampleAndRatio) {
  GroupedLogits g;
  g.positive = 1.0;
  g.of(NT::kEN) = {2.0};
  g.of(NT::kGN) = {0.0};
  const LossBreakdown b = GhclLossAndGrad(g);
  const double hard = b.grads(NT::kEN)[0];
  const double easy = b.grads(NT::kGN)[0];
  EXPECT_NEAR(hard, kE * kE / (kE + kE * kE), 1e-15);
  EXPECT_NEAR(easy, 1.0 / (kE + 1.0), 1e-15);
  const double c = CorrectionFactor(1.0, std::vector<double>{2.0},
                                    std::vector<double>{0.0});
  EXPECT_NEAR(c, (kE + 1) / (kE + kE * kE), 1e-15);
  EXPECT_NEAR(hard / easy, GradientRatioOrg(2.0, 0.0) * c, 1e-13);
}

TEST(Ghcl, EmptyInputIsRejected) {
  GroupedLogits g;
  EXPECT_THROW(GhclLossAndGrad(g), Error);
}

TEST(PerTypeInfoNce, SingleTypeMatchesInfoNce) {
  GroupedLogits g;
  g.positive = -0.3;
  g.of(NT::kRN) = {0.5, 0.1};
  const auto m = PerTypeInfoNce(g);
  ASSERT_EQ(m.size(), 1u);
  const InfoNceResult r = InfoNceLossAndGrad(-0.3, g.of(NT::kRN));
  EXPECT_EQ(m.at(NT::kRN).loss, r.loss);
  EXPECT_EQ(m.at(NT::kRN).grad_negatives, r.grad_negatives);
}

TEST(PerTypeInfoNce, SymmetricInputsGiveEqualLosses) {
  GroupedLogits g;
  g.positive = 0.7;
  for (NT t : kAllNegativeTypes) g.of(t) = {0.1, -0.2};
  const auto m = PerTypeInfoNce(g);
  ASSERT_EQ(m.size(), 4u);
  for (NT t : kAllNegativeTypes) EXPECT_EQ(m.at(t).loss, m.at(NT::kEN).loss);
}

TEST(CombinedLight, WeightedSumOfPerTypeTerms) {
  Rng rng = MakeStream(3, {10});
  for (int c = 0; c < 50; ++c) {
    const GroupedLogits g = RandomGroups(rng, 1);
    TypeWeights w;
    w.lambda = {0.5, 1.5, 2.0, 0.25};
    const auto terms = PerTypeInfoNce(g);
    double expected = 0.0;
    for (const auto& [t, r] : terms) expected += w[t] * r.loss;
    EXPECT_NEAR(CombinedLight(g, w).total, expected, 1e-12);
    EXPECT_NEAR(CombinedLight(g, TypeWeights{}).total,
                [&] {
                  double s = 0;
                  for (const auto& [t, r] : terms) s += r.loss;
                  return s;
                }(),
                1e-12);
  }
}

TEST(CombinedLight, ZeroWeightSilencesAType) {
  GroupedLogits g;
  g.positive = 0.2;
  for (NT t : kAllNegativeTypes) g.of(t) = {0.3, 1.1};
  TypeWeights w;
  w[NT::kPRN] = 0.0;
  const LossBreakdown b = CombinedLight(g, w);
  for (double v : b.grads(NT::kPRN)) EXPECT_EQ(v, 0.0);
  EXPECT_NE(b.grads(NT::kEN)[0], 0.0);
}

TEST(CombinedLight, NegativeWeightIsAConfigError) {
  GroupedLogits g;
  g.of(NT::kEN) = {0.0};
  TypeWeights w;
  w[NT::kGN] = -1.0;
  try {
    CombinedLight(g, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(CombinedComplex, EasyOnlyBatchIsSkipped) {
  GroupedLogits g;
  g.of(NT::kPRN) = {0.5};
  g.of(NT::kGN) = {0.1, 0.2};
  const LossBreakdown b = CombinedComplex(g, 1.0, 1.0);
  EXPECT_TRUE(b.skipped);
  EXPECT_EQ(b.total, 0.0);
  EXPECT_EQ(GradSum(b), 0.0);
}

TEST(CombinedComplex, EnOnlyMatchesInfoNce) {
  GroupedLogits g;
  g.positive = 0.9;
  g.of(NT::kEN) = {1.2, 0.4};
  const LossBreakdown b = CombinedComplex(g, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(b.total, InfoNceLossAndGrad(0.9, g.of(NT::kEN)).loss);
}

TEST(CombinedComplex, EasyGradientsAreIdenticallyZero) {
  Rng rng = MakeStream(8, {11});
  for (int c = 0; c < 50; ++c) {
    const LossBreakdown b = CombinedComplex(RandomGroups(rng), 1.3, 0.6);
    for (double v : b.grads(NT::kPRN)) EXPECT_EQ(v, 0.0);
    for (double v : b.grads(NT::kGN)) EXPECT_EQ(v, 0.0);
  }
}

TEST(GlobalBce, SingletonBatch) {
  EXPECT_NEAR(GlobalBce(std::vector<double>{0}, std::vector<int>{0}).loss,
              std::log(2.0), 1e-15);
  EXPECT_THROW(GlobalBce(std::vector<double>{}, std::vector<int>{}), Error);
}

TEST(TotalObjective, Arithmetic) {
  LossBreakdown light, complex;
  light.total = 0.5;
  complex.total = 0.3;
  EXPECT_DOUBLE_EQ(TotalObjective(light, complex, 0.2, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(TotalObjective(light, complex, 0.2, 0.0), 0.8);
  EXPECT_EQ(TotalObjective({}, {}, 0.0, 1.0), 0.0);
  EXPECT_THROW(TotalObjective(light, complex, 0.2, -1.0), Error);
}

TEST(GradientRatio, Values) {
  EXPECT_EQ(GradientRatioOrg(0, 0), 1.0);
  EXPECT_NEAR(GradientRatioOrg(2, 0), kE * kE, 1e-14);
  const std::vector<double> scores{0.3, -1.0, 2.0};
  const std::vector<double> shuffled{2.0, 0.3, -1.0};
  EXPECT_NEAR(CorrectionFactor(0.5, scores, shuffled), 1.0, 1e-15);
  EXPECT_NEAR(GradientRatioGhcl(0.5, 0.3, scores, -1.0, shuffled),
              GradientRatioOrg(0.3, -1.0), 1e-14);
  EXPECT_NEAR(GradientRatioGhcl(1, 2, std::vector<double>{2}, 0,
                                std::vector<double>{0}),
              kE, 1e-14);
  EXPECT_THROW(CorrectionFactor(0, {}, scores), Error);
}

TEST(GradientRatio, HardHeavierMeansShrinkingRatio) {
  Rng rng = MakeStream(1, {12});
  std::uniform_real_distribution<double> u(-4, 4);
  int checked = 0;
  for (int c = 0; c < 2000; ++c) {
    std::vector<double> hard(1 + c % 4), easy(1 + c % 3);
    for (double& s : hard) s = u(rng);
    for (double& s : easy) s = u(rng);
    double hs = 0, es = 0;
    for (double s : hard) hs += std::exp(s);
    for (double s : easy) es += std::exp(s);
    if (hs <= es) continue;
    ++checked;
    const double sp = u(rng);
    EXPECT_LT(CorrectionFactor(sp, hard, easy), 1.0);
    EXPECT_LT(GradientRatioGhcl(sp, hard[0], hard, easy[0], easy),
              GradientRatioOrg(hard[0], easy[0]));
  }
  EXPECT_GT(checked, 500);
}

TEST(LossProperties, SoftmaxConservation) {
  Rng rng = MakeStream(2, {13});
  for (int c = 0; c < 500; ++c) {
    const GroupedLogits g = RandomGroups(rng);
    EXPECT_NEAR(GradSum(PooledInfoNce(g)), 0.0, 1e-12);
    EXPECT_NEAR(GradSum(GhclLossAndGrad(g)), 0.0, 1e-12);
    EXPECT_NEAR(GradSum(CombinedLight(g, TypeWeights{})), 0.0, 1e-12);
    EXPECT_NEAR(GradSum(CombinedComplex(g, 1.0, 1.0)), 0.0, 1e-12);
  }
}

TEST(LossProperties, GhclGroupsAreDecoupled) {
  Rng rng = MakeStream(4, {14});
  std::normal_distribution<double> nudge(0.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    const GroupedLogits g = RandomGroups(rng, 1);
    const LossBreakdown base = GhclLossAndGrad(g);
    GroupedLogits easy_moved = g;
    for (double& s : easy_moved.of(NT::kPRN)) s += nudge(rng);
    for (double& s : easy_moved.of(NT::kGN)) s += nudge(rng);
    const LossBreakdown e = GhclLossAndGrad(easy_moved);
    EXPECT_EQ(e.grads(NT::kEN), base.grads(NT::kEN));
    EXPECT_EQ(e.grads(NT::kRN), base.grads(NT::kRN));
    GroupedLogits hard_moved = g;
    for (double& s : hard_moved.of(NT::kEN)) s += nudge(rng);
    const LossBreakdown h = GhclLossAndGrad(hard_moved);
    EXPECT_EQ(h.grads(NT::kPRN), base.grads(NT::kPRN));
    EXPECT_EQ(h.grads(NT::kGN), base.grads(NT::kGN));
  }
}

// Analytic logit gradients against extended-precision finite differences.
TEST(LossProperties, GradientsMatchFiniteDifferences) {
  Rng rng = MakeStream(6, {15});
  double worst = 0.0;
  for (int c = 0; c < 150; ++c) {
    const GroupedLogits g = RandomGroups(rng);
    const auto layout = oracle::Layout::Of(g);
    const auto x = oracle::Flatten(g);
    const double temp = c % 3 == 0 ? 0.7 : 1.0;
    std::array<oracle::Real, 4> lambda = {1.0, 0.5, 2.0, 0.0};
    TypeWeights w;
    for (size_t i = 0; i < 4; ++i) w.lambda[i] = static_cast<double>(lambda[i]);
    std::array<oracle::Real, 4> hard_only = {0.8, 1.7, 0, 0};

    worst = std::max(worst, oracle::MaxRelativeError(
        oracle::FlattenGrads(PooledInfoNce(g, temp)),
        oracle::Gradient([&](const oracle::Vec& v) {
          return oracle::Pooled(layout, v, temp);
        }, x)));
    worst = std::max(worst, oracle::MaxRelativeError(
        oracle::FlattenGrads(GhclLossAndGrad(g, temp)),
        oracle::Gradient([&](const oracle::Vec& v) {
          return oracle::Ghcl(layout, v, temp);
        }, x)));
    worst = std::max(worst, oracle::MaxRelativeError(
        oracle::FlattenGrads(CombinedLight(g, w, temp)),
        oracle::Gradient([&](const oracle::Vec& v) {
          return oracle::WeightedPerType(layout, v, lambda, temp);
        }, x)));
    worst = std::max(worst, oracle::MaxRelativeError(
        oracle::FlattenGrads(CombinedComplex(g, 0.8, 1.7, temp)),
        oracle::Gradient([&](const oracle::Vec& v) {
          return oracle::WeightedPerType(layout, v, hard_only, temp);
        }, x)));

    std::vector<double> z(g.total_negatives() + 1);
    std::vector<int> y(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
      z[i] = x[i] * 2;
      y[i] = i % 3 == 0;
    }
    const oracle::Vec zl(z.begin(), z.end());
    worst = std::max(worst, oracle::MaxRelativeError(
        GlobalBce(z, y).grads,
        oracle::Gradient([&](const oracle::Vec& v) {
          oracle::Real s = 0;
          for (size_t i = 0; i < v.size(); ++i) s += oracle::Bce(v[i], y[i]);
          return s / v.size();
        }, zl)));
  }
  EXPECT_LE(worst, 1e-8);
}

}  // namespace
}  // namespace hetrank
