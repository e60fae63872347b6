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

#ifndef HETRANK_EXPERIMENT_CONFIG_H_
#define HETRANK_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hetrank/cascade/cascade.h"
#include "hetrank/eval/damr_eval.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/world.h"
#include "hetrank/train/trainer.h"

namespace hetrank {

struct CorpusConfig {
  int64_t n_requests = 20000;
  double train_fraction = 0.8;
};

struct ModelConfig {
  ScorerArchitecture architecture;
  // Capacity of the scorer trained by single-model regimes.
  CapacityPreset preset = CapacityPreset::kLightweight;
};

struct SweepConfig {
  std::vector<int64_t> G_values = {50,  100,  200,  400, 550,
                                   800, 1200, 2000, 4000};
  // Held-out requests served per G.
  int64_t requests = 400;
};

struct BenchmarkConfig {
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
};

// Every knob of an experiment. Serialized in full into each run directory.
struct ExperimentConfig {
  uint64_t seed = 0;
  std::string output_dir = "runs";
  WorldConfig world;
  PipelineConfig pipeline;
  CorpusConfig corpus;
  ModelConfig model;
  TrainConfig train;
  DamrEvalConfig eval;
  GateConfig gate;
  CostModel cost;
  SweepConfig sweep;
  BenchmarkConfig benchmark;

  // Throws a config error naming the offending key.
  void Validate() const;
};

// Pretty-printed JSON with every key present, newline terminated.
std::string SerializeExperimentConfig(const ExperimentConfig& cfg);

// Starts from the defaults and overlays `text`. Unknown keys and type
// mismatches throw a config error naming the key, e.g. "train.stpes".
ExperimentConfig ParseExperimentConfig(const std::string& text);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Overrides from variables named HETRANK_<SECTION>_<KEY> (HETRANK_<KEY> for
// top-level keys), upper case. Values are read as JSON, falling back to a
// plain string. `lookup` returns nullptr for unset variables.
using EnvLookup = std::function<const char*(const std::string&)>;
ExperimentConfig ApplyEnvironmentOverrides(const ExperimentConfig& cfg,
                                           const EnvLookup& lookup);

// Variable names ApplyEnvironmentOverrides consults, in key order.
std::vector<std::string> EnvironmentOverrideNames();

}  // namespace hetrank

#endif  // HETRANK_EXPERIMENT_CONFIG_H_
