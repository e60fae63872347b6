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

#ifndef HETRANK_SIM_PIPELINE_H_
#define HETRANK_SIM_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "hetrank/common/rng.h"
#include "hetrank/losses/negative_type.h"
#include "hetrank/sim/world.h"

namespace hetrank {

struct StageNoise {
  double retrieval = 0.3;
  double preranking = 0.3;
  double ranking = 0.15;
};

struct PipelineConfig {
  int retrieval_size = 4000;
  int preranking_keep = 500;
  int ranking_keep = 100;
  int exposure_size = 6;
  StageNoise noise;
  // RN: unexposed ranking candidates ranked below rank_l.
  int rank_l = 50;
  // PRN: pre-ranking candidates ranked below prerank_l.
  int prerank_l = 200;
  int rn_cap = 10;
  int prn_cap = 10;
  // GN per exposed positive.
  double gn_ratio = 2.0;

  void Validate() const;
};

struct LabeledSample {
  int64_t user_id = 0;
  int32_t item_id = 0;
  int label = 0;
  SampleType type = SampleType::kEN;
  // Ranking-stage rank for EP/EN/RN, pre-ranking rank for PRN, absent for GN.
  std::optional<int32_t> stage_rank;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// One user's trace through the pipeline. Stage lists are ordered best first;
// an item's stage rank is its 1-based position.
struct Request {
  int64_t request_id = 0;
  int64_t user_id = 0;
  int64_t timestamp = 0;
  std::vector<int32_t> retrieval;
  std::vector<int32_t> preranking;
  std::vector<int32_t> ranking;
  // E^q: the first exposure_size ranking candidates, in ranking order.
  std::vector<int32_t> exposed;
  std::vector<uint8_t> clicked;
  std::vector<LabeledSample> samples;

  int num_clicks() const;
  bool clickless() const { return num_clicks() == 0; }

  friend bool operator==(const Request&, const Request&) = default;
};

// Runs retrieval -> pre-ranking -> ranking -> exposure -> clicks for one user.
// Each stage scores with rel(u, x) + N(0, noise_stage) and keeps its top
// candidates (ties broken by lower item id). Samples are left empty.
Request SimulateRequest(const World& world, int64_t user_id,
                        const PipelineConfig& config, Rng& rng);

// Tags EP/EN from the exposure, then RN, PRN and GN under the precedence
// EP/EN > RN > PRN > GN so no item carries two tags. Clickless requests get
// EN/RN/PRN but no GN, since GN is anchored to the positive count.
std::vector<LabeledSample> ConstructSamples(const Request& request,
                                            const PipelineConfig& config,
                                            Rng& rng);

// n_requests requests with ids 0..n-1 and increasing timestamps. Request i
// draws from its own stream keyed by (seed, i), so the corpus does not depend
// on generation order.
std::vector<Request> GenerateCorpus(const World& world,
                                    const PipelineConfig& config,
                                    int64_t n_requests, uint64_t seed);

// Chronological split: the earliest `train_fraction` of requests by timestamp
// train, the rest are held out.
struct CorpusSplit {
  std::vector<Request> train;
  std::vector<Request> test;
};
CorpusSplit SplitChronologically(std::vector<Request> requests,
                                 double train_fraction);

}  // namespace hetrank

#endif  // HETRANK_SIM_PIPELINE_H_
