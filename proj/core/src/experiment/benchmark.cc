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

#include "hetrank/experiment/benchmark.h"

#include "hetrank/common/rng.h"

namespace hetrank {
namespace {

constexpr uint64_t kScorerInit = 1;
constexpr uint64_t kExpertInit = 2;

size_t InputDim(const ExperimentConfig& cfg) {
  return 2 * cfg.world.latent_dim;
}

}  // namespace

BenchmarkData BuildBenchmarkData(const ExperimentConfig& cfg, uint64_t seed) {
  World world = GenerateWorld(cfg.world, seed);
  CorpusSplit split = SplitChronologically(
      GenerateCorpus(world, cfg.pipeline, cfg.corpus.n_requests, seed),
      cfg.corpus.train_fraction);
  TestSets sets = BuildTestSets(split.test);
  return {std::move(world), std::move(split), std::move(sets)};
}

MlpScorer InitialModel(const ExperimentConfig& cfg, CapacityPreset preset,
                       ModelRole role, uint64_t seed) {
  const LayerDims dims =
      cfg.model.architecture.LayerDims(preset, InputDim(cfg));
  const uint64_t tag = role == ModelRole::kScorer ? kScorerInit : kExpertInit;
  Rng rng = MakeStream(seed, {stream::kInit, tag});
  return MlpScorer::Initialized(dims, rng(), preset);
}

TrainedRun TrainAndEvaluate(const ExperimentConfig& cfg,
                            const BenchmarkData& data, TrainConfig train,
                            CapacityPreset preset, uint64_t seed) {
  train.seed = seed;
  TrainedRun run;
  run.label = train.RegimeLabel();
  std::optional<MlpScorer> expert;
  CapacityPreset scorer_preset = preset;
  if (train.regime == LossRegime::kHapFull) {
    scorer_preset = CapacityPreset::kLightweight;
    expert = InitialModel(cfg, CapacityPreset::kExpressive, ModelRole::kExpert,
                          seed);
  }
  ModelSet models = MakeModelSet(
      InitialModel(cfg, scorer_preset, ModelRole::kScorer, seed), expert,
      train.optimizer);
  run.result = Train(std::move(models), data.split.train,
                     data.world.features(), train);
  const MlpScorer& light = run.result.models.scorer.model;
  const MlpScorer& complex = run.result.models.expert
                                 ? run.result.models.expert->model
                                 : light;
  run.metrics = EvaluateDamr(&light, &complex, data.test_sets,
                             data.world.features(), cfg.eval);
  run.train = train;
  return run;
}

std::vector<std::string> BenchmarkRunLabels() {
  return {"bce_mix",           "infonce_mix",       "ghcl",
          "infonce_single_EN", "infonce_single_RN", "infonce_single_PRN",
          "infonce_single_GN", "hap_full",          "unified"};
}

BenchmarkSeedResult RunBenchmarkSeed(const ExperimentConfig& cfg,
                                     uint64_t seed,
                                     const ProgressFn& progress) {
  auto note = [&](const std::string& s) {
    if (progress) progress(s);
  };
  BenchmarkSeedResult out;
  out.seed = seed;
  note("generating corpus");
  const BenchmarkData data = BuildBenchmarkData(cfg, seed);
  out.stats = ComputeCorpusStats(data.world, data.split.train);

  auto run = [&](TrainConfig t, CapacityPreset preset,
                 const std::string& label) {
    note("training " + label);
    TrainedRun r = TrainAndEvaluate(cfg, data, std::move(t), preset, seed);
    r.label = label;
    out.runs.emplace(label, std::move(r));
  };

  const CapacityPreset light = CapacityPreset::kLightweight;
  for (LossRegime regime :
       {LossRegime::kBceMix, LossRegime::kInfoNceMix, LossRegime::kGhcl}) {
    TrainConfig t = cfg.train;
    t.regime = regime;
    run(t, light, t.RegimeLabel());
  }
  for (NegativeType type : kAllNegativeTypes) {
    TrainConfig t = cfg.train;
    t.regime = LossRegime::kInfoNceSingle;
    t.single_type = type;
    run(t, light, t.RegimeLabel());
  }
  {
    TrainConfig t = cfg.train;
    t.regime = LossRegime::kHapFull;
    run(t, light, "hap_full");
  }
  {
    TrainConfig t = cfg.train;
    t.regime = LossRegime::kInfoNceMix;
    t.telemetry_every = 0;
    run(t, CapacityPreset::kExpressive, "unified");
  }

  note("sweeping gate");
  const TrainedRun& hap = out.runs.at("hap_full");
  const MlpScorer& f_l = hap.result.models.scorer.model;
  const MlpScorer& f_c = hap.result.models.expert->model;
  const auto& test = data.split.test;
  const size_t n_sweep =
      std::min(test.size(), static_cast<size_t>(cfg.sweep.requests));
  const std::span<const Request> sweep_requests(test.data(), n_sweep);
  out.sweep = SweepGate(sweep_requests, f_l, f_c, data.world,
                        cfg.sweep.G_values, cfg.gate.final_k, cfg.cost, seed);
  note("comparing against the unified model");
  out.comparison = CompareUnified(
      sweep_requests, data.test_sets, out.runs.at("unified").result.models
                                          .scorer.model,
      f_l, f_c, data.world, cfg.gate, cfg.cost, seed);
  return out;
}

}  // namespace hetrank
