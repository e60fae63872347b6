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

#include "hetrank/train/trainer.h"

#include <array>
#include <cmath>
#include <utility>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

constexpr std::array<std::pair<LossRegime, std::string_view>, 6> kRegimeNames =
    {{{LossRegime::kBceSingle, "bce_single"},
      {LossRegime::kInfoNceSingle, "infonce_single"},
      {LossRegime::kBceMix, "bce_mix"},
      {LossRegime::kInfoNceMix, "infonce_mix"},
      {LossRegime::kGhcl, "ghcl"},
      {LossRegime::kHapFull, "hap_full"}}};

constexpr std::array<std::pair<GlobalTarget, std::string_view>, 4>
    kTargetNames = {{{GlobalTarget::kNone, "none"},
                     {GlobalTarget::kScorer, "scorer"},
                     {GlobalTarget::kExpert, "expert"},
                     {GlobalTarget::kBoth, "both"}}};

bool Participates(SampleType type, ModelRole role, const TrainConfig& cfg) {
  if (type == SampleType::kEP) return true;
  const NegativeType t = *ToNegativeType(type);
  if (role == ModelRole::kExpert) return IsHard(t);
  if (IsSingleType(cfg.regime)) return t == cfg.single_type;
  return true;
}

bool GlobalApplies(ModelRole role, const TrainConfig& cfg) {
  if (!IsContrastive(cfg.regime) || cfg.alpha == 0.0) return false;
  switch (cfg.global_target) {
    case GlobalTarget::kNone:
      return false;
    case GlobalTarget::kScorer:
      return role == ModelRole::kScorer;
    case GlobalTarget::kExpert:
      return role == ModelRole::kExpert;
    case GlobalTarget::kBoth:
      return true;
  }
  return false;
}

LossBreakdown ContrastiveTerm(const GroupedLogits& g, ModelRole role,
                              const TrainConfig& cfg) {
  if (role == ModelRole::kExpert) {
    return CombinedComplex(g, cfg.lambda[NegativeType::kEN],
                           cfg.lambda[NegativeType::kRN], cfg.temperature);
  }
  switch (cfg.regime) {
    case LossRegime::kInfoNceSingle:
    case LossRegime::kInfoNceMix:
      return PooledInfoNce(g, cfg.temperature);
    case LossRegime::kGhcl:
      return GhclLossAndGrad(g, cfg.temperature);
    case LossRegime::kHapFull:
      return CombinedLight(g, cfg.lambda, cfg.temperature);
    default:
      break;
  }
  throw Error(ErrorCode::kConfig, "regime has no contrastive term");
}

struct Scored {
  size_t sample = 0;  // index into the request's sample list
  double logit = 0.0;
  SampleType type = SampleType::kEP;
  int label = 0;
};

}  // namespace

std::string_view LossRegimeName(LossRegime regime) {
  for (const auto& [r, name] : kRegimeNames) {
    if (r == regime) return name;
  }
  return "unknown";
}

std::optional<LossRegime> ParseLossRegime(std::string_view name) {
  for (const auto& [r, n] : kRegimeNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

bool IsSingleType(LossRegime regime) {
  return regime == LossRegime::kBceSingle ||
         regime == LossRegime::kInfoNceSingle;
}

bool IsContrastive(LossRegime regime) {
  return regime != LossRegime::kBceSingle && regime != LossRegime::kBceMix;
}

std::string_view GlobalTargetName(GlobalTarget target) {
  for (const auto& [t, name] : kTargetNames) {
    if (t == target) return name;
  }
  return "unknown";
}

std::optional<GlobalTarget> ParseGlobalTarget(std::string_view name) {
  for (const auto& [t, n] : kTargetNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::string_view PositiveReductionName(PositiveReduction reduction) {
  return reduction == PositiveReduction::kMean ? "mean" : "sum";
}

std::optional<PositiveReduction> ParsePositiveReduction(std::string_view name) {
  if (name == "mean") return PositiveReduction::kMean;
  if (name == "sum") return PositiveReduction::kSum;
  return std::nullopt;
}

void TrainConfig::Validate() const {
  if (sequence_length < 1) {
    throw Error(ErrorCode::kConfig, "train.sequence_length must be >= 1");
  }
  if (batch_requests < 1) {
    throw Error(ErrorCode::kConfig, "train.batch_requests must be >= 1");
  }
  if (steps < 0) throw Error(ErrorCode::kConfig, "train.steps must be >= 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kConfig, "train.alpha must be >= 0");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kConfig, "train.temperature must be > 0");
  }
  if (telemetry_every < 0) {
    throw Error(ErrorCode::kConfig, "train.telemetry_every must be >= 0");
  }
  lambda.Validate();
  optimizer.Validate();
}

std::string TrainConfig::RegimeLabel() const {
  std::string label(LossRegimeName(regime));
  if (IsSingleType(regime)) {
    label += '_';
    label += NegativeTypeName(single_type);
  }
  return label;
}

ModelSet MakeModelSet(const MlpScorer& scorer,
                      const std::optional<MlpScorer>& expert,
                      const RmsPropConfig& optimizer) {
  ModelSet set;
  set.scorer = {scorer, MakeOptimizerState(scorer, optimizer)};
  if (expert) set.expert = TrainedModel{*expert,
                                        MakeOptimizerState(*expert, optimizer)};
  return set;
}

BatchGradient ComputeBatchGradient(const MlpScorer& model, ModelRole role,
                                   std::span<const GroupedRequest> batch,
                                   const FeatureTable& features,
                                   const TrainConfig& cfg,
                                   bool with_telemetry) {
  const bool contrastive = IsContrastive(cfg.regime);

  // Forward every participating sample once, keeping its trace.
  thread_local std::vector<ActivationTrace> traces;
  std::vector<std::vector<Scored>> scored(batch.size());
  size_t total = 0;
  for (size_t r = 0; r < batch.size(); ++r) {
    const auto& samples = batch[r].samples;
    for (size_t i = 0; i < samples.size(); ++i) {
      const LabeledSample& s = samples[i];
      if (!Participates(s.type, role, cfg)) continue;
      if (traces.size() <= total) traces.resize(total + 1);
      const double z = model.Forward(features.user(s.user_id),
                                     features.item(s.item_id), &traces[total]);
      scored[r].push_back({total, z, s.type, s.label});
      ++total;
    }
  }

  BatchGradient out;
  out.grads = GradientBuffer(model.layer_dims());
  std::vector<double> upstream(total, 0.0);

  // Telemetry coefficients: per-sample upstream for each type's own term.
  std::array<std::vector<double>, kNumNegativeTypes> tele;
  std::array<size_t, kNumNegativeTypes> tele_count{};
  std::array<double, kNumNegativeTypes> logit_sum{};
  std::array<size_t, kNumNegativeTypes> logit_count{};
  if (with_telemetry) {
    for (auto& v : tele) v.assign(total, 0.0);
  }

  if (contrastive) {
    auto has_terms = [&](const std::vector<Scored>& rows) {
      bool pos = false, neg = false;
      for (const Scored& s : rows) {
        if (s.type == SampleType::kEP) {
          pos = true;
        } else if (role == ModelRole::kScorer ||
                   IsHard(*ToNegativeType(s.type))) {
          neg = true;
        }
      }
      return pos && neg;
    };
    size_t active = 0;
    for (const auto& rows : scored) active += has_terms(rows) ? 1 : 0;

    GroupedLogits g;
    std::array<std::vector<size_t>, kNumNegativeTypes> neg_index;
    for (const auto& rows : scored) {
      if (!has_terms(rows)) continue;
      for (auto& v : g.negatives) v.clear();
      for (auto& v : neg_index) v.clear();
      size_t positives = 0;
      for (const Scored& s : rows) {
        if (s.type == SampleType::kEP) {
          ++positives;
          continue;
        }
        const size_t t = Index(*ToNegativeType(s.type));
        g.negatives[t].push_back(s.logit);
        neg_index[t].push_back(s.sample);
      }
      const double per_positive =
          cfg.positive_reduction == PositiveReduction::kMean
              ? 1.0 / static_cast<double>(positives)
              : 1.0;
      const double factor = per_positive / static_cast<double>(active);
      for (const Scored& p : rows) {
        if (p.type != SampleType::kEP) continue;
        g.positive = p.logit;
        const LossBreakdown b = ContrastiveTerm(g, role, cfg);
        out.loss += factor * b.total;
        upstream[p.sample] += factor * b.grad_positive;
        for (NegativeType t : kAllNegativeTypes) {
          const auto& gt = b.grads(t);
          const auto& idx = neg_index[Index(t)];
          for (size_t j = 0; j < gt.size(); ++j) {
            upstream[idx[j]] += factor * gt[j];
            if (with_telemetry) {
              const double c = per_positive * gt[j];
              tele[Index(t)][idx[j]] += c;
              tele[Index(t)][p.sample] -= c;
            }
          }
        }
      }
      if (with_telemetry) {
        for (NegativeType t : kAllNegativeTypes) {
          tele_count[Index(t)] += neg_index[Index(t)].size();
        }
      }
    }
  } else {
    const double inv = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
    for (const auto& rows : scored) {
      for (const Scored& s : rows) {
        const double z = s.logit;
        const double y = static_cast<double>(s.label);
        const double l = -(y * std::log(std::max(Sigmoid(z), 1e-12)) +
                           (1.0 - y) * std::log(std::max(Sigmoid(-z), 1e-12)));
        out.loss += inv * l;
        upstream[s.sample] += inv * (Sigmoid(z) - y);
        if (with_telemetry && s.type != SampleType::kEP) {
          const size_t t = Index(*ToNegativeType(s.type));
          tele[t][s.sample] += Sigmoid(z);
          ++tele_count[t];
        }
      }
    }
  }

  if (GlobalApplies(role, cfg) && total > 0) {
    std::vector<double> logits(total);
    std::vector<int> labels(total);
    for (const auto& rows : scored) {
      for (const Scored& s : rows) {
        logits[s.sample] = s.logit;
        labels[s.sample] = s.label;
      }
    }
    const BceResult global = GlobalBce(logits, labels);
    out.loss += cfg.alpha * global.loss;
    for (size_t i = 0; i < total; ++i) {
      upstream[i] += cfg.alpha * global.grads[i];
    }
  }

  for (size_t i = 0; i < total; ++i) {
    model.BackwardAccumulate(traces[i], upstream[i], out.grads);
  }

  if (with_telemetry) {
    for (const auto& rows : scored) {
      for (const Scored& s : rows) {
        if (s.type == SampleType::kEP) continue;
        const size_t t = Index(*ToNegativeType(s.type));
        logit_sum[t] += s.logit;
        ++logit_count[t];
      }
    }
    std::array<std::optional<GradientBuffer>, kNumNegativeTypes> per_type;
    bool any = false;
    for (NegativeType t : kAllNegativeTypes) {
      const size_t k = Index(t);
      if (tele_count[k] == 0) continue;
      GradientBuffer buf(model.layer_dims());
      for (size_t i = 0; i < total; ++i) {
        model.BackwardAccumulate(traces[i], tele[k][i], buf);
      }
      buf.Scale(1.0 / static_cast<double>(tele_count[k]));
      per_type[k] = std::move(buf);
      any = true;
    }
    if (any) {
      TelemetryEntry entry = GradientStats(per_type);
      for (NegativeType t : kAllNegativeTypes) {
        const size_t k = Index(t);
        if (logit_count[k] > 0 && entry.norm[k]) {
          entry.logit_mean[k] =
              logit_sum[k] / static_cast<double>(logit_count[k]);
        }
      }
      out.telemetry = std::move(entry);
    }
  }
  return out;
}

TrainResult Train(ModelSet models, std::span<const Request> corpus,
                  const FeatureTable& features, const TrainConfig& cfg) {
  cfg.Validate();
  const bool hap = cfg.regime == LossRegime::kHapFull;
  if (hap && !models.expert) {
    throw Error(ErrorCode::kConfig, "hap_full needs both a lightweight and an "
                                    "expressive model");
  }
  if (!hap && models.expert) {
    throw Error(ErrorCode::kConfig, "regime " + cfg.RegimeLabel() +
                                        " trains a single model but an "
                                        "expressive model was supplied");
  }
  if (models.step < 0) {
    throw Error(ErrorCode::kConfig, "model step must be >= 0");
  }

  TrainResult result;
  if (models.step >= cfg.steps) {
    result.models = std::move(models);
    return result;
  }
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidInput, "training corpus is empty");
  }

  Batcher batcher(corpus, {cfg.sequence_length, cfg.batch_requests, cfg.seed});
  for (int64_t step = models.step; step < cfg.steps; ++step) {
    const std::vector<GroupedRequest> batch = batcher.Batch(step);
    const bool sample = cfg.telemetry_every > 0 &&
                        step % cfg.telemetry_every == 0;
    LossPoint point;
    point.step = step;

    BatchGradient g = ComputeBatchGradient(models.scorer.model,
                                           ModelRole::kScorer, batch, features,
                                           cfg, sample);
    if (!std::isfinite(g.loss)) {
      throw DivergenceError(step, "lightweight loss is not finite");
    }
    point.scorer_loss = g.loss;

    std::optional<BatchGradient> ge;
    if (models.expert) {
      ge = ComputeBatchGradient(models.expert->model, ModelRole::kExpert,
                                batch, features, cfg, false);
      if (!std::isfinite(ge->loss)) {
        throw DivergenceError(step, "expressive loss is not finite");
      }
      point.expert_loss = ge->loss;
    }

    models.scorer.optimizer.step = step;
    RmsPropStep(models.scorer.model, g.grads, models.scorer.optimizer);
    if (models.expert) {
      models.expert->optimizer.step = step;
      RmsPropStep(models.expert->model, ge->grads, models.expert->optimizer);
    }
    if (g.telemetry) {
      g.telemetry->step = step;
      result.telemetry.push_back(std::move(*g.telemetry));
    }
    result.loss_curve.push_back(point);
    models.step = step + 1;
  }
  result.models = std::move(models);
  return result;
}

void WriteLossCsv(std::ostream& out, std::span<const LossPoint> curve) {
  out << "step,loss,scorer_loss,expert_loss\n";
  const auto old_precision = out.precision(17);
  for (const LossPoint& p : curve) {
    out << p.step << ',' << p.total() << ',' << p.scorer_loss << ','
        << p.expert_loss << '\n';
  }
  out.precision(old_precision);
}

LossTrend SmoothedLossTrend(std::span<const LossPoint> curve, size_t window) {
  if (curve.empty() || window == 0) {
    throw Error(ErrorCode::kInvalidInput, "loss curve is empty");
  }
  window = std::min(window, curve.size());
  LossTrend trend;
  for (size_t i = 0; i < window; ++i) {
    trend.head += curve[i].total();
    trend.tail += curve[curve.size() - window + i].total();
  }
  trend.head /= static_cast<double>(window);
  trend.tail /= static_cast<double>(window);
  return trend;
}

}  // namespace hetrank
