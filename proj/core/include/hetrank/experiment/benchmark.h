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

#ifndef HETRANK_EXPERIMENT_BENCHMARK_H_
#define HETRANK_EXPERIMENT_BENCHMARK_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hetrank/cascade/cascade.h"
#include "hetrank/eval/damr_eval.h"
#include "hetrank/experiment/config.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/samples.h"
#include "hetrank/sim/world.h"
#include "hetrank/train/trainer.h"

namespace hetrank {

// World, corpus split and test sets for one seed.
struct BenchmarkData {
  World world;
  CorpusSplit split;
  TestSets test_sets;
};

BenchmarkData BuildBenchmarkData(const ExperimentConfig& cfg, uint64_t seed);

// Initial model for a role. Seeds differ between the scorer and the expert so
// a hap pair never starts from correlated weights.
MlpScorer InitialModel(const ExperimentConfig& cfg, CapacityPreset preset,
                       ModelRole role, uint64_t seed);

struct TrainedRun {
  std::string label;
  TrainConfig train;
  TrainResult result;
  MetricsTable metrics;
};

// Trains `regime` from a fresh initialization and evaluates it. Single-model
// regimes are evaluated with the model in both routing slots.
TrainedRun TrainAndEvaluate(const ExperimentConfig& cfg,
                            const BenchmarkData& data, TrainConfig train,
                            CapacityPreset preset, uint64_t seed);

struct BenchmarkSeedResult {
  uint64_t seed = 0;
  CorpusStats stats;
  // Keyed by label: bce_mix, infonce_mix, ghcl, infonce_single_<T>, hap_full,
  // unified.
  std::map<std::string, TrainedRun> runs;
  std::vector<SweepRow> sweep;
  UnifiedComparison comparison;
};

using ProgressFn = std::function<void(const std::string&)>;

// Every model, sweep and comparison the benchmark criteria read, for one seed.
BenchmarkSeedResult RunBenchmarkSeed(const ExperimentConfig& cfg,
                                     uint64_t seed,
                                     const ProgressFn& progress = {});

// The labels RunBenchmarkSeed produces, in training order.
std::vector<std::string> BenchmarkRunLabels();

}  // namespace hetrank

#endif  // HETRANK_EXPERIMENT_BENCHMARK_H_
