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

#include "hetrank/cascade/cascade.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"
#include "hetrank/common/svg.h"

namespace hetrank {
namespace {

double FailureDraw(uint64_t seed, int64_t request_id) {
  Rng rng = MakeStream(seed, {stream::kServe, static_cast<uint64_t>(request_id)});
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::vector<double> ScoreItems(const MlpScorer& model,
                               const FeatureTable& features, int64_t user_id,
                               std::span<const int32_t> items) {
  std::vector<double> scores(items.size());
  const auto user = features.user(user_id);
  for (size_t i = 0; i < items.size(); ++i) {
    scores[i] = model.Forward(user, features.item(items[i]));
  }
  return scores;
}

// Order of positions [0, n) by descending score, lower item id on ties.
std::vector<size_t> OrderByScore(std::span<const int32_t> items,
                                 std::span<const double> scores, size_t n) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return items[a] < items[b];
  });
  return order;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void GateConfig::Validate() const {
  if (final_k < 1) throw Error(ErrorCode::kConfig, "final_k must be >= 1");
  if (G < final_k) {
    throw Error(ErrorCode::kConfig, "gate G must be >= final_k");
  }
}

void CostModel::Validate() const {
  const double values[] = {base_latency_ms, ms_per_megaflop,
                           capacity_megaflops_per_request,
                           overload_failure_slope, failure_latency_penalty_ms};
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kConfig, "cost model entries must be >= 0");
    }
  }
}

double CostModel::Latency(double megaflops) const {
  return base_latency_ms + ms_per_megaflop * megaflops;
}

double CostModel::FailureProbability(double megaflops) const {
  if (!failures_enabled || megaflops <= capacity_megaflops_per_request) {
    return 0.0;
  }
  if (capacity_megaflops_per_request == 0.0) return 1.0;
  return std::min(1.0, overload_failure_slope *
                           (megaflops / capacity_megaflops_per_request - 1.0));
}

std::vector<int32_t> RankByScore(std::span<const int32_t> items,
                                 std::span<const double> scores) {
  if (items.size() != scores.size()) {
    throw Error(ErrorCode::kInvalidInput, "items and scores differ in length");
  }
  std::vector<int32_t> ranked;
  ranked.reserve(items.size());
  for (size_t i : OrderByScore(items, scores, items.size())) {
    ranked.push_back(items[i]);
  }
  return ranked;
}

ServeResult ServeRanked(const Request& request,
                        std::span<const int32_t> ranked,
                        std::span<const double> complex_scores,
                        int64_t light_flops, int64_t complex_flops,
                        const GateConfig& gate, const CostModel& cost,
                        uint64_t seed) {
  gate.Validate();
  ServeResult out;
  const auto n = static_cast<int64_t>(ranked.size());
  out.gate = std::min(gate.G, n);
  out.clamped = gate.G > n;
  if (complex_scores.size() < static_cast<size_t>(out.gate)) {
    throw Error(ErrorCode::kInvalidInput,
                "expressive scores do not cover the gate");
  }
  const int64_t k = std::min(gate.final_k, out.gate);
  out.flops = n * light_flops + out.gate * complex_flops;
  const double mf = static_cast<double>(out.flops) / 1e6;
  out.latency_ms = cost.Latency(mf);
  const double p_fail = cost.FailureProbability(mf);
  out.failed = p_fail > 0.0 && FailureDraw(seed, request.request_id) < p_fail;
  if (out.failed) {
    out.items.assign(ranked.begin(), ranked.begin() + k);
    out.latency_ms += cost.failure_latency_penalty_ms;
    return out;
  }
  const auto order = OrderByScore(ranked, complex_scores,
                                  static_cast<size_t>(out.gate));
  out.items.reserve(static_cast<size_t>(k));
  for (int64_t i = 0; i < k; ++i) {
    out.items.push_back(ranked[order[static_cast<size_t>(i)]]);
  }
  return out;
}

ServeResult Serve(const Request& request, const MlpScorer& light,
                  const MlpScorer& complex, const FeatureTable& features,
                  const GateConfig& gate, const CostModel& cost,
                  uint64_t seed) {
  const auto light_scores =
      ScoreItems(light, features, request.user_id, request.retrieval);
  const auto ranked = RankByScore(request.retrieval, light_scores);
  const size_t g = std::min(ranked.size(), static_cast<size_t>(gate.G));
  const auto complex_scores = ScoreItems(
      complex, features, request.user_id, std::span(ranked).first(g));
  return ServeRanked(request, ranked, complex_scores, CountFlops(light),
                     CountFlops(complex), gate, cost, seed);
}

ServeResult ServeUnified(const Request& request, const MlpScorer& complex,
                         const FeatureTable& features, int64_t final_k,
                         const CostModel& cost, uint64_t seed) {
  if (final_k < 1) throw Error(ErrorCode::kConfig, "final_k must be >= 1");
  const auto scores =
      ScoreItems(complex, features, request.user_id, request.retrieval);
  const auto ranked = RankByScore(request.retrieval, scores);
  ServeResult out;
  const auto n = static_cast<int64_t>(ranked.size());
  out.gate = n;
  out.flops = n * CountFlops(complex);
  const double mf = static_cast<double>(out.flops) / 1e6;
  out.latency_ms = cost.Latency(mf);
  const double p_fail = cost.FailureProbability(mf);
  out.failed = p_fail > 0.0 && FailureDraw(seed, request.request_id) < p_fail;
  if (out.failed) out.latency_ms += cost.failure_latency_penalty_ms;
  // A failed unified request has no cheaper fallback; it still emits its
  // ranking so engagement stays comparable.
  out.items.assign(ranked.begin(), ranked.begin() + std::min(final_k, n));
  return out;
}

double Engagement(const World& world, int64_t user_id,
                  std::span<const int32_t> items) {
  if (items.empty()) return 0.0;
  double sum = 0.0;
  for (int32_t item : items) sum += world.ClickProbability(user_id, item);
  return sum / static_cast<double>(items.size());
}

std::vector<SweepRow> SweepGate(std::span<const Request> requests,
                                const MlpScorer& light,
                                const MlpScorer& complex, const World& world,
                                std::span<const int64_t> G_values,
                                int64_t final_k, const CostModel& cost,
                                uint64_t seed) {
  if (G_values.empty()) {
    throw Error(ErrorCode::kConfig, "gate sweep needs at least one G value");
  }
  if (requests.empty()) {
    throw Error(ErrorCode::kInvalidInput, "gate sweep needs requests");
  }
  cost.Validate();
  for (int64_t g : G_values) GateConfig{g, final_k}.Validate();
  const int64_t max_g = *std::max_element(G_values.begin(), G_values.end());
  const int64_t light_flops = CountFlops(light);
  const int64_t complex_flops = CountFlops(complex);
  const FeatureTable& features = world.features();

  std::vector<SweepRow> rows(G_values.size());
  for (const Request& request : requests) {
    const auto light_scores =
        ScoreItems(light, features, request.user_id, request.retrieval);
    const auto ranked = RankByScore(request.retrieval, light_scores);
    const size_t prefix = std::min(ranked.size(), static_cast<size_t>(max_g));
    const auto complex_scores = ScoreItems(
        complex, features, request.user_id, std::span(ranked).first(prefix));
    for (size_t i = 0; i < G_values.size(); ++i) {
      const ServeResult r =
          ServeRanked(request, ranked, complex_scores, light_flops,
                      complex_flops, {G_values[i], final_k}, cost, seed);
      rows[i].engagement += Engagement(world, request.user_id, r.items);
      rows[i].latency_ms += r.latency_ms;
      rows[i].failure_rate += r.failed ? 1.0 : 0.0;
      rows[i].megaflops += static_cast<double>(r.flops) / 1e6;
    }
  }
  const double n = static_cast<double>(requests.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i].G = G_values[i];
    rows[i].engagement /= n;
    rows[i].latency_ms /= n;
    rows[i].failure_rate /= n;
    rows[i].megaflops /= n;
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "G,engagement,latency_ms,failure_rate,megaflops\n";
  for (const SweepRow& r : rows) {
    out << r.G << ',' << Fixed(r.engagement, 8) << ',' << Fixed(r.latency_ms, 6)
        << ',' << Fixed(r.failure_rate, 6) << ',' << Fixed(r.megaflops, 6)
        << '\n';
  }
}

std::string RenderSweepSvg(std::span<const SweepRow> rows) {
  LineSeries series{"engagement", {}, {}};
  for (const SweepRow& r : rows) {
    series.x.push_back(static_cast<double>(r.G));
    series.y.push_back(r.engagement);
  }
  return RenderLineChart({series}, {"Engagement vs gate threshold",
                                    "G (candidates forwarded)",
                                    "mean click probability", 640, 400});
}

UnifiedComparison CompareUnified(std::span<const Request> requests,
                                 const TestSets& test_sets,
                                 const MlpScorer& unified,
                                 const MlpScorer& light,
                                 const MlpScorer& complex, const World& world,
                                 const GateConfig& gate, const CostModel& cost,
                                 uint64_t seed) {
  gate.Validate();
  cost.Validate();
  if (requests.empty()) {
    throw Error(ErrorCode::kInvalidInput, "comparison needs requests");
  }
  UnifiedComparison report;
  report.unified.name = "unified";
  report.hap.name = "hap";
  const DamrEvalConfig eval_cfg{false, PositiveScoring::kSetModel};
  const MetricsTable u =
      EvaluateDamr(&unified, &unified, test_sets, world.features(), eval_cfg);
  const MetricsTable h =
      EvaluateDamr(&light, &complex, test_sets, world.features(), eval_cfg);
  report.unified.thard_auc = u[TestSetId::kTHard].auc;
  report.unified.teasy_auc = u[TestSetId::kTEasy].auc;
  report.hap.thard_auc = h[TestSetId::kTHard].auc;
  report.hap.teasy_auc = h[TestSetId::kTEasy].auc;

  for (const Request& request : requests) {
    const ServeResult ru = ServeUnified(request, unified, world.features(),
                                        gate.final_k, cost, seed);
    const ServeResult rh =
        Serve(request, light, complex, world.features(), gate, cost, seed);
    for (auto [sys, r] : {std::pair{&report.unified, &ru},
                          std::pair{&report.hap, &rh}}) {
      sys->megaflops_per_request += static_cast<double>(r->flops) / 1e6;
      sys->latency_ms += r->latency_ms;
      sys->failure_rate += r->failed ? 1.0 : 0.0;
      sys->engagement += Engagement(world, request.user_id, r->items);
    }
  }
  const double n = static_cast<double>(requests.size());
  for (SystemReport* sys : {&report.unified, &report.hap}) {
    sys->megaflops_per_request /= n;
    sys->latency_ms /= n;
    sys->failure_rate /= n;
    sys->engagement /= n;
  }
  return report;
}

void WriteComparisonCsv(std::ostream& out, const UnifiedComparison& report) {
  out << "system,thard_auc,teasy_auc,megaflops,latency_ms,failure_rate,"
         "engagement\n";
  for (const SystemReport* s : {&report.unified, &report.hap}) {
    out << s->name << ',' << Fixed(s->thard_auc, 6) << ','
        << Fixed(s->teasy_auc, 6) << ',' << Fixed(s->megaflops_per_request, 6)
        << ',' << Fixed(s->latency_ms, 6) << ',' << Fixed(s->failure_rate, 6)
        << ',' << Fixed(s->engagement, 8) << '\n';
  }
}

}  // namespace hetrank
