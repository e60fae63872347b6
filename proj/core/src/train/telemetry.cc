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

#include "hetrank/train/telemetry.h"

#include <algorithm>
#include <cmath>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

void WriteOptional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << *v;
}

}  // namespace

std::optional<double> TelemetryEntry::CosineVsEn(NegativeType t) const {
  if (t == NegativeType::kEN) return std::nullopt;
  return cosine[Index(t)][Index(NegativeType::kEN)];
}

TelemetryEntry GradientStats(
    std::span<const std::optional<GradientBuffer>, kNumNegativeTypes> grads) {
  TelemetryEntry entry;
  bool any = false;
  for (NegativeType t : kAllNegativeTypes) {
    if (grads[Index(t)]) {
      entry.norm[Index(t)] = grads[Index(t)]->Norm();
      any = true;
    }
  }
  if (!any) {
    throw Error(ErrorCode::kInvalidInput,
                "gradient statistics need at least one type");
  }
  for (NegativeType a : kAllNegativeTypes) {
    for (NegativeType b : kAllNegativeTypes) {
      const auto& na = entry.norm[Index(a)];
      const auto& nb = entry.norm[Index(b)];
      if (!na || !nb || *na == 0.0 || *nb == 0.0) continue;
      double c = grads[Index(a)]->Dot(*grads[Index(b)]) / (*na * *nb);
      if (a == b) c = 1.0;
      entry.cosine[Index(a)][Index(b)] = std::clamp(c, -1.0, 1.0);
    }
  }
  return entry;
}

void WriteTelemetryCsv(std::ostream& out,
                       std::span<const TelemetryEntry> entries) {
  out << "step,type,norm,logit_mean,cosine_vs_EN\n";
  const auto old_precision = out.precision(17);
  for (const TelemetryEntry& e : entries) {
    for (NegativeType t : kAllNegativeTypes) {
      if (!e.norm[Index(t)]) continue;
      out << e.step << ',' << NegativeTypeName(t) << ',';
      WriteOptional(out, e.norm[Index(t)]);
      out << ',';
      WriteOptional(out, e.logit_mean[Index(t)]);
      out << ',';
      WriteOptional(out, e.CosineVsEn(t));
      out << '\n';
    }
  }
  out.precision(old_precision);
}

TelemetrySummary SummarizeTelemetry(std::span<const TelemetryEntry> entries,
                                    int64_t first_step, int64_t end_step) {
  TelemetrySummary s;
  std::array<double, kNumNegativeTypes> norm_sum{};
  std::array<double, kNumNegativeTypes> logit_sum{};
  std::array<size_t, kNumNegativeTypes> norm_n{};
  std::array<size_t, kNumNegativeTypes> logit_n{};
  double cos_sum = 0.0, ratio_sum = 0.0;
  size_t cos_n = 0, ratio_n = 0;
  for (const TelemetryEntry& e : entries) {
    if (e.step < first_step || e.step >= end_step) continue;
    ++s.entries;
    double lo = INFINITY, hi = 0.0;
    std::optional<double> min_cos;
    for (NegativeType t : kAllNegativeTypes) {
      const size_t i = Index(t);
      if (e.norm[i]) {
        norm_sum[i] += *e.norm[i];
        ++norm_n[i];
        lo = std::min(lo, *e.norm[i]);
        hi = std::max(hi, *e.norm[i]);
      }
      if (e.logit_mean[i]) {
        logit_sum[i] += *e.logit_mean[i];
        ++logit_n[i];
      }
      if (auto c = e.CosineVsEn(t)) {
        min_cos = min_cos ? std::min(*min_cos, *c) : *c;
      }
    }
    if (min_cos) {
      cos_sum += *min_cos;
      ++cos_n;
    }
    if (lo > 0.0 && std::isfinite(lo)) {
      ratio_sum += hi / lo;
      ++ratio_n;
    }
  }
  for (size_t i = 0; i < kNumNegativeTypes; ++i) {
    if (norm_n[i]) s.mean_norm[i] = norm_sum[i] / static_cast<double>(norm_n[i]);
    if (logit_n[i]) {
      s.mean_logit[i] = logit_sum[i] / static_cast<double>(logit_n[i]);
    }
  }
  if (cos_n) s.mean_min_cosine_vs_en = cos_sum / static_cast<double>(cos_n);
  if (ratio_n) s.mean_norm_ratio = ratio_sum / static_cast<double>(ratio_n);
  return s;
}

}  // namespace hetrank
