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

#ifndef HETRANK_CASCADE_CASCADE_H_
#define HETRANK_CASCADE_CASCADE_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hetrank/eval/damr_eval.h"
#include "hetrank/model/mlp_scorer.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/samples.h"
#include "hetrank/sim/world.h"

namespace hetrank {

struct GateConfig {
  // Candidates forwarded to the expressive model.
  int64_t G = 550;
  // Items emitted downstream.
  int64_t final_k = 50;

  // Checks 1 <= final_k <= G. The upper bound against the candidate count is
  // applied per request by clamping.
  void Validate() const;
};

struct CostModel {
  double base_latency_ms = 5.0;
  double ms_per_megaflop = 2.0;
  double capacity_megaflops_per_request = 8.0;
  double overload_failure_slope = 2.0;
  // Added to the latency of a failed request.
  double failure_latency_penalty_ms = 20.0;
  bool failures_enabled = true;

  void Validate() const;
  double Latency(double megaflops) const;
  // min(1, slope * (MF / capacity - 1)) above capacity, else 0.
  double FailureProbability(double megaflops) const;
};

struct ServeResult {
  std::vector<int32_t> items;
  int64_t flops = 0;
  double latency_ms = 0.0;
  bool failed = false;
  // G actually used; smaller than requested when the request had fewer
  // candidates, in which case `clamped` is set.
  int64_t gate = 0;
  bool clamped = false;
};

// Retrieval candidates ordered by lightweight score, best first; ties go to
// the lower item id.
std::vector<int32_t> RankByScore(std::span<const int32_t> items,
                                 std::span<const double> scores);

// Two-stage serving of one request. The failure draw is a function of
// (seed, request_id) only, so every gate value sees the same uniform.
ServeResult Serve(const Request& request, const MlpScorer& light,
                  const MlpScorer& complex, const FeatureTable& features,
                  const GateConfig& gate, const CostModel& cost,
                  uint64_t seed);

// Same, from precomputed scores. `ranked` is the RankByScore order and
// `complex_scores[i]` the expressive score of ranked[i]; it must cover the
// first min(G, |ranked|) entries.
ServeResult ServeRanked(const Request& request,
                        std::span<const int32_t> ranked,
                        std::span<const double> complex_scores,
                        int64_t light_flops, int64_t complex_flops,
                        const GateConfig& gate, const CostModel& cost,
                        uint64_t seed);

// Expressive model over every retrieval candidate, no gate.
ServeResult ServeUnified(const Request& request, const MlpScorer& complex,
                         const FeatureTable& features, int64_t final_k,
                         const CostModel& cost, uint64_t seed);

// Mean ground-truth click probability of the emitted items.
double Engagement(const World& world, int64_t user_id,
                  std::span<const int32_t> items);

struct SweepRow {
  int64_t G = 0;
  double engagement = 0.0;
  double latency_ms = 0.0;
  double failure_rate = 0.0;
  double megaflops = 0.0;
};

// Serves every request at every G. Scores are computed once per request.
// Throws a config error when G_values is empty.
std::vector<SweepRow> SweepGate(std::span<const Request> requests,
                                const MlpScorer& light,
                                const MlpScorer& complex, const World& world,
                                std::span<const int64_t> G_values,
                                int64_t final_k, const CostModel& cost,
                                uint64_t seed);

// G,engagement,latency_ms,failure_rate,megaflops
void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows);
std::string RenderSweepSvg(std::span<const SweepRow> rows);

struct SystemReport {
  std::string name;
  double thard_auc = 0.0;
  double teasy_auc = 0.0;
  double megaflops_per_request = 0.0;
  double latency_ms = 0.0;
  double failure_rate = 0.0;
  double engagement = 0.0;
};

struct UnifiedComparison {
  SystemReport unified;
  SystemReport hap;
};

UnifiedComparison CompareUnified(std::span<const Request> requests,
                                 const TestSets& test_sets,
                                 const MlpScorer& unified,
                                 const MlpScorer& light,
                                 const MlpScorer& complex, const World& world,
                                 const GateConfig& gate, const CostModel& cost,
                                 uint64_t seed);

// system,thard_auc,teasy_auc,megaflops,latency_ms,failure_rate,engagement
void WriteComparisonCsv(std::ostream& out, const UnifiedComparison& report);

}  // namespace hetrank

#endif  // HETRANK_CASCADE_CASCADE_H_
