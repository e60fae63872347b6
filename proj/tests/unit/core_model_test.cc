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
#include "hetrank/model/checkpoint.h"
#include "hetrank/model/finite_diff.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/model/rmsprop.h"
#include "oracle/oracle.h"

namespace hetrank {
namespace {

std::vector<double> RandomVec(Rng& rng, size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

TEST(MlpScorer, ZeroWeightsGiveZeroLogit) {
  const MlpScorer s({4, 3, 1});
  const std::vector<double> user{1, 2}, item{-3, 4};
  EXPECT_EQ(s.Forward(user, item), 0.0);
}

TEST(MlpScorer, SingleLinearLayerIsADotProduct) {
  MlpScorer s({2, 1});
  s.mutable_weights(0)[0] = 1.0;
  s.mutable_weights(0)[1] = 1.0;
  const std::vector<double> user{2}, item{3};
  EXPECT_DOUBLE_EQ(s.Forward(user, item), 5.0);
}

TEST(MlpScorer, ForwardMatchesIndependentChain) {
  Rng rng = MakeStream(11, {1});
  for (int c = 0; c < 20; ++c) {
    const MlpScorer s = MlpScorer::Initialized({10, 7, 5, 1}, rng());
    const auto user = RandomVec(rng, 4);
    const auto item = RandomVec(rng, 6);
    EXPECT_NEAR(s.Forward(user, item),
                static_cast<double>(oracle::Forward(s, user, item)), 1e-14);
  }
}

TEST(MlpScorer, InputDimensionMismatchThrows) {
  const MlpScorer s({4, 1});
  const std::vector<double> user{1}, item{2};
  try {
    s.Forward(user, item);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInputShape);
  }
}

TEST(MlpScorer, BackwardRejectsForeignTrace) {
  const MlpScorer a({4, 3, 1});
  const MlpScorer b({4, 2, 1});
  ActivationTrace trace;
  const std::vector<double> x{1, 2}, y{3, 4};
  a.Forward(x, y, &trace);
  try {
    b.Backward(trace, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShape);
  }
}

TEST(MlpScorer, ZeroUpstreamGivesZeroGradient) {
  const MlpScorer s = MlpScorer::Initialized({6, 4, 1}, 3);
  ActivationTrace trace;
  const std::vector<double> x{1, 2, 3}, y{3, 4, 5};
  s.Forward(x, y, &trace);
  const GradientBuffer g = s.Backward(trace, 0.0);
  for (double v : g.values()) EXPECT_EQ(v, 0.0);
}

TEST(MlpScorer, LinearLayerGradientIsTheInput) {
  MlpScorer s({3, 1});
  ActivationTrace trace;
  const std::vector<double> user{0.5}, item{-2.0, 7.0};
  s.Forward(user, item, &trace);
  const GradientBuffer g = s.Backward(trace, 1.0);
  EXPECT_EQ(g.weights(0)[0], 0.5);
  EXPECT_EQ(g.weights(0)[1], -2.0);
  EXPECT_EQ(g.weights(0)[2], 7.0);
  EXPECT_EQ(g.biases(0)[0], 1.0);
}

TEST(MlpScorer, BackwardIsLinearInUpstream) {
  Rng rng = MakeStream(5, {2});
  const MlpScorer s = MlpScorer::Initialized({8, 6, 3, 1}, rng());
  ActivationTrace trace;
  const auto user = RandomVec(rng, 3);
  const auto item = RandomVec(rng, 5);
  s.Forward(user, item, &trace);
  const double a = 0.7, b = -1.9, u1 = 0.3, u2 = 2.5;
  const GradientBuffer combined = s.Backward(trace, a * u1 + b * u2);
  GradientBuffer separate = s.Backward(trace, u1);
  separate.Scale(a);
  separate.AddScaled(s.Backward(trace, u2), b);
  for (size_t i = 0; i < combined.values().size(); ++i) {
    EXPECT_NEAR(combined.values()[i], separate.values()[i], 1e-12);
  }
}

TEST(FiniteDiff, ZeroWeightScorerIsExact) {
  const MlpScorer s({4, 3, 1});
  const std::vector<double> user{1, -1}, item{0.5, 2};
  EXPECT_LE(FiniteDiffCheck(s, user, item, 1.0, 1e-5), 1e-9);
}

TEST(FiniteDiff, RandomScorersPassOverManyCases) {
  Rng rng = MakeStream(17, {3});
  for (int c = 0; c < 100; ++c) {
    const MlpScorer s = MlpScorer::Initialized({8, 6, 4, 1}, rng());
    const auto user = RandomVec(rng, 4);
    const auto item = RandomVec(rng, 4);
    EXPECT_LE(FiniteDiffCheck(s, user, item, 1.3, 1e-5), 1e-6) << "case " << c;
  }
}

TEST(FiniteDiff, SignFlippedBackwardIsCaught) {
  const MlpScorer s = MlpScorer::Initialized({6, 5, 3, 1}, 42);
  const std::vector<double> user{0.2, -0.4, 0.9}, item{0.1, 0.3, -0.8};
  ActivationTrace trace;
  s.Forward(user, item, &trace);
  GradientBuffer g = s.Backward(trace, 1.0);
  g.mutable_values()[0] = -g.mutable_values()[0];
  EXPECT_GT(FiniteDiffCheck(s, user, item, 1.0, 1e-5, g), 1e-2);
}

TEST(FiniteDiff, RejectsBadEpsilon) {
  const MlpScorer s({2, 1});
  const std::vector<double> u{1}, i{1};
  EXPECT_THROW(FiniteDiffCheck(s, u, i, 1.0, 0.0), Error);
  EXPECT_THROW(FiniteDiffCheck(s, u, i, 1.0, 0.5), Error);
}

TEST(RmsProp, ZeroGradientDecaysAccumulatorsOnly) {
  MlpScorer s = MlpScorer::Initialized({3, 2, 1}, 9);
  const MlpScorer before = s;
  OptimizerState state = MakeOptimizerState(s, {});
  for (double& a : state.accumulators) a = 1.0;
  RmsPropStep(s, GradientBuffer(s.layer_dims()), state);
  EXPECT_EQ(s, before);
  for (double a : state.accumulators) EXPECT_DOUBLE_EQ(a, 0.9);
}

TEST(RmsProp, OneScalarStepByHand) {
  MlpScorer s({1, 1});
  s.mutable_weights(0)[0] = 0.25;
  OptimizerState state = MakeOptimizerState(s, {0.01, 0.9, 1e-8});
  GradientBuffer g(s.layer_dims());
  g.mutable_values()[0] = 1.0;
  RmsPropStep(s, g, state);
  EXPECT_DOUBLE_EQ(state.accumulators[0], 0.1);
  EXPECT_DOUBLE_EQ(s.weights(0)[0], 0.25 - 0.01 / std::sqrt(0.1 + 1e-8));
  EXPECT_EQ(s.biases(0)[0], 0.0);
}

TEST(RmsProp, IdenticalCallsAreBitwiseIdentical) {
  MlpScorer a = MlpScorer::Initialized({5, 4, 1}, 1);
  MlpScorer b = a;
  OptimizerState sa = MakeOptimizerState(a, {});
  OptimizerState sb = sa;
  GradientBuffer g(a.layer_dims());
  Rng rng = MakeStream(4, {4});
  for (double& v : g.mutable_values()) v = RandomVec(rng, 1)[0];
  RmsPropStep(a, g, sa);
  RmsPropStep(b, g, sb);
  EXPECT_EQ(a, b);
  EXPECT_EQ(sa, sb);
}

TEST(RmsProp, NonFiniteGradientReportsStep) {
  MlpScorer s({2, 1});
  OptimizerState state = MakeOptimizerState(s, {});
  state.step = 17;
  GradientBuffer g(s.layer_dims());
  g.mutable_values()[1] = std::nan("");
  try {
    RmsPropStep(s, g, state);
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.step(), 17);
  }
}

TEST(Flops, DirectFormula) {
  EXPECT_EQ(CountFlops(LayerDims{4, 1}), 9);
  EXPECT_EQ(CountFlops(LayerDims{8, 4, 1}), 77);
}

TEST(Flops, ExpressiveDominatesLightweight) {
  const ScorerArchitecture arch;
  const auto light = arch.LayerDims(CapacityPreset::kLightweight, 16);
  const auto heavy = arch.LayerDims(CapacityPreset::kExpressive, 16);
  EXPECT_GT(CountFlops(heavy), CountFlops(light));
  EXPECT_GE(heavy.size(), light.size());
  for (size_t i = 0; i + 1 < light.size(); ++i) EXPECT_GE(heavy[i], light[i]);
}

TEST(Flops, GrowsWithDepthAndWidth) {
  const LayerDims base{6, 4, 1};
  EXPECT_GT(CountFlops(LayerDims{6, 5, 1}), CountFlops(base));
  EXPECT_GT(CountFlops(LayerDims{6, 4, 2, 1}), CountFlops(base));
}

TEST(ScorerArchitecture, RejectsNonDominatingPresets) {
  ScorerArchitecture arch;
  arch.lightweight_hidden = {128};
  EXPECT_THROW(arch.Validate(), Error);
}

TEST(MlpScorer, SameSeedSameParameters) {
  EXPECT_EQ(MlpScorer::Initialized({9, 5, 1}, 123),
            MlpScorer::Initialized({9, 5, 1}, 123));
  EXPECT_NE(MlpScorer::Initialized({9, 5, 1}, 123),
            MlpScorer::Initialized({9, 5, 1}, 124));
}

TEST(Checkpoint, RoundTripIsExact) {
  MlpScorer s = MlpScorer::Initialized({6, 4, 1}, 77,
                                       CapacityPreset::kLightweight);
  OptimizerState state = MakeOptimizerState(s, {});
  state.accumulators[2] = 0.123456789012345678;
  state.step = 12;
  const Checkpoint in{s, state, 12};
  const Checkpoint out = ParseCheckpoint(SerializeCheckpoint(in));
  EXPECT_EQ(out.scorer, in.scorer);
  ASSERT_TRUE(out.optimizer.has_value());
  EXPECT_EQ(*out.optimizer, state);
  EXPECT_EQ(out.train_step, 12);
}

TEST(Checkpoint, RejectsOtherVersions) {
  const Checkpoint in{MlpScorer({2, 1}), std::nullopt, 0};
  std::string text = SerializeCheckpoint(in);
  const auto pos = text.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos) << text;
  text.replace(pos, 12, "\"version\": 9");
  try {
    ParseCheckpoint(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersion);
  }
}

}  // namespace
}  // namespace hetrank
