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

#include "hetrank/losses/losses.h"

#include <cmath>
#include <limits>
#include <string>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

constexpr double kLogClamp = 1e-12;

void CheckTemperature(double temperature) {
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::kConfig, "temperature must be > 0");
  }
}

// Scatters a softmax over a concatenation of groups back to per-type slots.
void Scatter(const std::vector<double>& flat,
             std::span<const NegativeType> types, const GroupedLogits& g,
             LossBreakdown& out, double scale) {
  size_t k = 0;
  for (NegativeType t : types) {
    auto& dst = out.grad_negatives[Index(t)];
    for (size_t i = 0; i < g.of(t).size(); ++i) dst[i] += scale * flat[k++];
  }
}

std::vector<double> Gather(const GroupedLogits& g,
                           std::span<const NegativeType> types) {
  std::vector<double> flat;
  for (NegativeType t : types) {
    flat.insert(flat.end(), g.of(t).begin(), g.of(t).end());
  }
  return flat;
}

LossBreakdown EmptyBreakdown(const GroupedLogits& g) {
  LossBreakdown out;
  for (NegativeType t : kAllNegativeTypes) {
    out.grad_negatives[Index(t)].assign(g.of(t).size(), 0.0);
  }
  return out;
}

constexpr std::array<NegativeType, 2> kHardTypes = {NegativeType::kEN,
                                                    NegativeType::kRN};
constexpr std::array<NegativeType, 2> kEasyTypes = {NegativeType::kPRN,
                                                    NegativeType::kGN};

}  // namespace

std::string_view NegativeTypeName(NegativeType t) {
  switch (t) {
    case NegativeType::kEN:
      return "EN";
    case NegativeType::kRN:
      return "RN";
    case NegativeType::kPRN:
      return "PRN";
    case NegativeType::kGN:
      return "GN";
  }
  return "?";
}

std::string_view SampleTypeName(SampleType t) {
  if (t == SampleType::kEP) return "EP";
  return NegativeTypeName(*ToNegativeType(t));
}

std::optional<NegativeType> ParseNegativeType(std::string_view name) {
  for (NegativeType t : kAllNegativeTypes) {
    if (NegativeTypeName(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<SampleType> ParseSampleType(std::string_view name) {
  if (name == "EP") return SampleType::kEP;
  if (auto t = ParseNegativeType(name)) return ToSampleType(*t);
  return std::nullopt;
}

size_t GroupedLogits::total_negatives() const {
  size_t n = 0;
  for (const auto& v : negatives) n += v.size();
  return n;
}

size_t GroupedLogits::hard_count() const {
  return of(NegativeType::kEN).size() + of(NegativeType::kRN).size();
}

size_t GroupedLogits::easy_count() const {
  return of(NegativeType::kPRN).size() + of(NegativeType::kGN).size();
}

LossTerm TermFor(NegativeType t) {
  switch (t) {
    case NegativeType::kEN:
      return LossTerm::kEN;
    case NegativeType::kRN:
      return LossTerm::kRN;
    case NegativeType::kPRN:
      return LossTerm::kPRN;
    case NegativeType::kGN:
      return LossTerm::kGN;
  }
  return LossTerm::kEN;
}

void TypeWeights::Validate() const {
  for (NegativeType t : kAllNegativeTypes) {
    if (!(lambda[Index(t)] >= 0.0)) {
      throw Error(ErrorCode::kConfig,
                  "lambda_" + std::string(NegativeTypeName(t)) +
                      " must be non-negative");
    }
  }
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

BceResult BceLossAndGrad(std::span<const double> logits,
                         std::span<const int> labels) {
  if (logits.empty() || logits.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "BCE requires equally sized, non-empty logits and labels");
  }
  BceResult out;
  out.grads.resize(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    const double y = labels[i] != 0 ? 1.0 : 0.0;
    const double p = Sigmoid(z);
    const double q = Sigmoid(-z);
    out.loss += -y * std::log(std::max(p, kLogClamp)) -
                (1.0 - y) * std::log(std::max(q, kLogClamp));
    out.grads[i] = p - y;
  }
  return out;
}

InfoNceResult InfoNceLossAndGrad(double positive,
                                 std::span<const double> negatives,
                                 double temperature) {
  if (negatives.empty()) {
    throw Error(ErrorCode::kInvalidInput, "InfoNCE needs at least one negative");
  }
  CheckTemperature(temperature);
  const double inv_t = 1.0 / temperature;
  const double sp = positive * inv_t;
  double m = sp;
  for (double s : negatives) m = std::max(m, s * inv_t);

  InfoNceResult out;
  out.grad_negatives.resize(negatives.size());
  const double e_pos = std::exp(sp - m);
  double z = e_pos;
  for (size_t k = 0; k < negatives.size(); ++k) {
    const double e = std::exp(negatives[k] * inv_t - m);
    out.grad_negatives[k] = e;
    z += e;
  }
  for (double& gk : out.grad_negatives) gk = gk / z * inv_t;
  out.loss = std::log(z) + m - sp;
  out.grad_positive = (e_pos / z - 1.0) * inv_t;
  return out;
}

LossBreakdown PooledInfoNce(const GroupedLogits& g, double temperature) {
  if (g.total_negatives() == 0) {
    throw Error(ErrorCode::kInvalidInput, "no negatives present");
  }
  LossBreakdown out = EmptyBreakdown(g);
  const auto flat = Gather(g, kAllNegativeTypes);
  const InfoNceResult r = InfoNceLossAndGrad(g.positive, flat, temperature);
  Scatter(r.grad_negatives, kAllNegativeTypes, g, out, 1.0);
  out.grad_positive = r.grad_positive;
  out.per_term[LossTerm::kPooled] = r.loss;
  out.total = r.loss;
  return out;
}

LossBreakdown GhclLossAndGrad(const GroupedLogits& g, double temperature) {
  if (g.hard_count() == 0 && g.easy_count() == 0) {
    throw Error(ErrorCode::kInvalidInput,
                "GHCL needs at least one hard or easy negative");
  }
  LossBreakdown out = EmptyBreakdown(g);
  auto apply = [&](std::span<const NegativeType> types, LossTerm term) {
    const auto flat = Gather(g, types);
    if (flat.empty()) return;
    const InfoNceResult r = InfoNceLossAndGrad(g.positive, flat, temperature);
    Scatter(r.grad_negatives, types, g, out, 1.0);
    out.grad_positive += r.grad_positive;
    out.per_term[term] = r.loss;
    out.total += r.loss;
  };
  apply(kHardTypes, LossTerm::kHard);
  apply(kEasyTypes, LossTerm::kEasy);
  return out;
}

std::map<NegativeType, InfoNceResult> PerTypeInfoNce(const GroupedLogits& g,
                                                     double temperature) {
  std::map<NegativeType, InfoNceResult> out;
  for (NegativeType t : kAllNegativeTypes) {
    if (g.of(t).empty()) continue;
    out.emplace(t, InfoNceLossAndGrad(g.positive, g.of(t), temperature));
  }
  return out;
}

namespace {

LossBreakdown WeightedPerType(const GroupedLogits& g, const TypeWeights& lambda,
                              std::span<const NegativeType> types,
                              double temperature) {
  lambda.Validate();
  LossBreakdown out = EmptyBreakdown(g);
  bool any = false;
  for (NegativeType t : types) {
    if (g.of(t).empty()) continue;
    any = true;
    const InfoNceResult r = InfoNceLossAndGrad(g.positive, g.of(t), temperature);
    const double w = lambda[t];
    auto& dst = out.grad_negatives[Index(t)];
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = w * r.grad_negatives[i];
    out.grad_positive += w * r.grad_positive;
    out.per_term[TermFor(t)] = r.loss;
    out.total += w * r.loss;
  }
  out.skipped = !any;
  return out;
}

}  // namespace

LossBreakdown CombinedLight(const GroupedLogits& g, const TypeWeights& lambda,
                            double temperature) {
  return WeightedPerType(g, lambda, kAllNegativeTypes, temperature);
}

LossBreakdown CombinedComplex(const GroupedLogits& g, double lambda_en,
                              double lambda_rn, double temperature) {
  TypeWeights w;
  w[NegativeType::kEN] = lambda_en;
  w[NegativeType::kRN] = lambda_rn;
  return WeightedPerType(g, w, kHardTypes, temperature);
}

BceResult GlobalBce(std::span<const double> logits,
                    std::span<const int> labels) {
  if (logits.empty()) {
    throw Error(ErrorCode::kInvalidInput, "global BCE over an empty batch");
  }
  BceResult r = BceLossAndGrad(logits, labels);
  const double inv = 1.0 / static_cast<double>(logits.size());
  r.loss *= inv;
  for (double& gi : r.grads) gi *= inv;
  return r;
}

double TotalObjective(const LossBreakdown& light, const LossBreakdown& complex,
                      double global, double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kConfig, "alpha must be >= 0");
  return light.total + complex.total + alpha * global;
}

}  // namespace hetrank
