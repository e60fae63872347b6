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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hetrank/cascade/cascade.h"
#include "hetrank/common/rng.h"
#include "hetrank/eval/metrics.h"
#include "hetrank/losses/losses.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/world.h"

namespace hetrank {
namespace {

std::vector<double> Uniform(size_t n, uint64_t seed) {
  Rng rng = MakeStream(seed, {0xbe});
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

MlpScorer Scorer(CapacityPreset preset) {
  return MlpScorer::Initialized(ScorerArchitecture{}.LayerDims(preset, 16), 1);
}

void BM_Forward(benchmark::State& state) {
  const auto preset = static_cast<CapacityPreset>(state.range(0));
  const MlpScorer s = Scorer(preset);
  const auto user = Uniform(8, 1), item = Uniform(8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(s.Forward(user, item));
}
BENCHMARK(BM_Forward)->Arg(0)->Arg(1);

void BM_ForwardBackward(benchmark::State& state) {
  const auto preset = static_cast<CapacityPreset>(state.range(0));
  const MlpScorer s = Scorer(preset);
  const auto user = Uniform(8, 1), item = Uniform(8, 2);
  ActivationTrace trace;
  for (auto _ : state) {
    s.Forward(user, item, &trace);
    benchmark::DoNotOptimize(s.Backward(trace, 0.5));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(0)->Arg(1);

GroupedLogits Logits(size_t per_type) {
  GroupedLogits g;
  g.positive = 1.0;
  uint64_t seed = 10;
  for (NegativeType t : kAllNegativeTypes) g.of(t) = Uniform(per_type, seed++);
  return g;
}

void BM_GhclLoss(benchmark::State& state) {
  const GroupedLogits g = Logits(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(GhclLossAndGrad(g));
}
BENCHMARK(BM_GhclLoss)->Arg(10)->Arg(100);

void BM_PooledInfoNce(benchmark::State& state) {
  const GroupedLogits g = Logits(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PooledInfoNce(g));
}
BENCHMARK(BM_PooledInfoNce)->Arg(10)->Arg(100);

void BM_Auc(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const auto scores = Uniform(n, 3);
  std::vector<int> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = i % 7 == 0;
  for (auto _ : state) benchmark::DoNotOptimize(Auc(scores, labels));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Auc)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_Serve(benchmark::State& state) {
  WorldConfig wc;
  wc.n_users = 50;
  wc.n_items = 5000;
  const World world = GenerateWorld(wc, 7);
  PipelineConfig pc;
  Rng rng = MakeStream(7, {0x5e});
  const Request req = SimulateRequest(world, 3, pc, rng);
  const ScorerArchitecture arch;
  const size_t in = 2 * wc.latent_dim;
  const MlpScorer light =
      MlpScorer::Initialized(arch.LayerDims(CapacityPreset::kLightweight, in), 1);
  const MlpScorer complex =
      MlpScorer::Initialized(arch.LayerDims(CapacityPreset::kExpressive, in), 2);
  GateConfig gate;
  gate.G = state.range(0);
  const CostModel cost;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Serve(req, light, complex, world.features(), gate, cost, 7));
  }
}
BENCHMARK(BM_Serve)->Arg(100)->Arg(550)->Arg(2000);

}  // namespace
}  // namespace hetrank

BENCHMARK_MAIN();
