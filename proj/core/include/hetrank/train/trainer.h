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

#ifndef HETRANK_TRAIN_TRAINER_H_
#define HETRANK_TRAIN_TRAINER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetrank/losses/losses.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/model/rmsprop.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/world.h"
#include "hetrank/train/batching.h"
#include "hetrank/train/telemetry.h"

namespace hetrank {

enum class LossRegime {
  kBceSingle,      // per-sample BCE on EP + one negative type
  kInfoNceSingle,  // InfoNCE on EP + one negative type
  kBceMix,         // per-sample BCE on everything
  kInfoNceMix,     // one softmax over every negative
  kGhcl,           // separate hard/easy softmaxes
  kHapFull,        // lightweight on all types, expert on EN + RN
};

std::string_view LossRegimeName(LossRegime regime);
std::optional<LossRegime> ParseLossRegime(std::string_view name);
bool IsSingleType(LossRegime regime);
bool IsContrastive(LossRegime regime);

// Which models receive the alpha-weighted global BCE term. Only contrastive
// regimes use it; the BCE regimes already are BCE.
enum class GlobalTarget { kNone, kScorer, kExpert, kBoth };
std::string_view GlobalTargetName(GlobalTarget target);
std::optional<GlobalTarget> ParseGlobalTarget(std::string_view name);

// How the terms of a request with several positives are combined.
enum class PositiveReduction { kMean, kSum };
std::string_view PositiveReductionName(PositiveReduction reduction);
std::optional<PositiveReduction> ParsePositiveReduction(std::string_view name);

struct TrainConfig {
  LossRegime regime = LossRegime::kHapFull;
  // Only read by the single-type regimes.
  NegativeType single_type = NegativeType::kEN;
  TypeWeights lambda;
  double alpha = 7.0;
  GlobalTarget global_target = GlobalTarget::kBoth;
  PositiveReduction positive_reduction = PositiveReduction::kMean;
  double temperature = 1.0;
  int sequence_length = 45;
  int batch_requests = 30;
  // Total step count to reach; a resumed run continues from the model step.
  int64_t steps = 3000;
  RmsPropConfig optimizer;
  uint64_t seed = 0;
  // 0 disables telemetry.
  int64_t telemetry_every = 10;

  void Validate() const;
  // e.g. "ghcl", "infonce_single_EN".
  std::string RegimeLabel() const;
};

struct TrainedModel {
  MlpScorer model;
  OptimizerState optimizer;
};

// The scorer is always trained (it is f_l under hap_full). The expert (f_c)
// must be present exactly when the regime is hap_full.
struct ModelSet {
  TrainedModel scorer;
  std::optional<TrainedModel> expert;
  int64_t step = 0;
};

ModelSet MakeModelSet(const MlpScorer& scorer,
                      const std::optional<MlpScorer>& expert,
                      const RmsPropConfig& optimizer);

struct LossPoint {
  int64_t step = 0;
  double scorer_loss = 0.0;
  double expert_loss = 0.0;
  double total() const { return scorer_loss + expert_loss; }
};

struct TrainResult {
  ModelSet models;
  // Measured on the scorer with the global term excluded.
  std::vector<TelemetryEntry> telemetry;
  std::vector<LossPoint> loss_curve;
};

// Trains from models.step up to cfg.steps. The batch, and hence the whole
// trajectory, is a function of (corpus, cfg, step), so stopping and resuming
// reproduces an uninterrupted run bit for bit.
//
// Throws a config error on regime/model mismatch and DivergenceError when the
// loss or a gradient becomes non-finite.
TrainResult Train(ModelSet models, std::span<const Request> corpus,
                  const FeatureTable& features, const TrainConfig& cfg);

// Objective value and parameter gradient of one model on one batch. Exposed
// for tests; Train uses it internally.
struct BatchGradient {
  double loss = 0.0;
  GradientBuffer grads;
  std::optional<TelemetryEntry> telemetry;
};

enum class ModelRole { kScorer, kExpert };

BatchGradient ComputeBatchGradient(const MlpScorer& model, ModelRole role,
                                   std::span<const GroupedRequest> batch,
                                   const FeatureTable& features,
                                   const TrainConfig& cfg,
                                   bool with_telemetry);

// step,loss,scorer_loss,expert_loss
void WriteLossCsv(std::ostream& out, std::span<const LossPoint> curve);

// Mean of the first and last `window` points of the total loss.
struct LossTrend {
  double head = 0.0;
  double tail = 0.0;
};
LossTrend SmoothedLossTrend(std::span<const LossPoint> curve, size_t window);

}  // namespace hetrank

#endif  // HETRANK_TRAIN_TRAINER_H_
