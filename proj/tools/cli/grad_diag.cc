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

#include "cli/grad_diag.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"
#include "hetrank/losses/gradient_ratio.h"
#include "hetrank/losses/losses.h"
#include "hetrank/model/finite_diff.h"
#include "hetrank/model/mlp_scorer.h"

namespace hetrank::cli {
namespace {

constexpr uint64_t kRatioTag = 0x726174;
constexpr uint64_t kLossTag = 0x6c6f7373;
constexpr uint64_t kMlpTag = 0x6d6c70;

std::vector<double> Uniform(Rng& rng, size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

size_t Count(Rng& rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

GroupedLogits RandomGroups(Rng& rng) {
  GroupedLogits g;
  g.positive = Uniform(rng, 1, -3.0, 3.0)[0];
  for (NegativeType t : kAllNegativeTypes) {
    g.of(t) = Uniform(rng, Count(rng, 1, 5), -3.0, 3.0);
  }
  return g;
}

// Logits flattened as [positive, EN..., RN..., PRN..., GN...].
std::vector<double> Flatten(const GroupedLogits& g) {
  std::vector<double> x{g.positive};
  for (NegativeType t : kAllNegativeTypes) {
    x.insert(x.end(), g.of(t).begin(), g.of(t).end());
  }
  return x;
}

GroupedLogits Unflatten(const GroupedLogits& shape,
                        const std::vector<double>& x) {
  GroupedLogits g = shape;
  size_t k = 0;
  g.positive = x[k++];
  for (NegativeType t : kAllNegativeTypes) {
    for (double& v : g.of(t)) v = x[k++];
  }
  return g;
}

std::vector<double> FlattenGrads(const LossBreakdown& b) {
  std::vector<double> x{b.grad_positive};
  for (NegativeType t : kAllNegativeTypes) {
    x.insert(x.end(), b.grads(t).begin(), b.grads(t).end());
  }
  return x;
}

double StencilError(const std::function<double(const std::vector<double>&)>& f,
                    std::vector<double> x, const std::vector<double>& analytic) {
  constexpr double h = 1e-3;
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    auto at = [&](double offset) {
      x[i] = saved + offset;
      return f(x);
    };
    const double numeric =
        (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    x[i] = saved;
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]),
                                   1e-4});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
  }
  return worst;
}

}  // namespace

RatioIdentityReport CheckRatioIdentity(uint64_t seed, int64_t cases) {
  if (cases < 1) throw Error(ErrorCode::kInvalidInput, "cases must be >= 1");
  Rng rng = MakeStream(seed, {kRatioTag});
  RatioIdentityReport report;
  report.cases = cases;
  for (int64_t c = 0; c < cases; ++c) {
    GroupedLogits g;
    g.positive = Uniform(rng, 1, -4.0, 4.0)[0];
    g.of(NegativeType::kEN) = Uniform(rng, Count(rng, 1, 6), -4.0, 4.0);
    g.of(NegativeType::kRN) = Uniform(rng, Count(rng, 0, 6), -4.0, 4.0);
    g.of(NegativeType::kPRN) = Uniform(rng, Count(rng, 1, 6), -4.0, 4.0);
    g.of(NegativeType::kGN) = Uniform(rng, Count(rng, 0, 6), -4.0, 4.0);

    std::vector<double> hard = g.of(NegativeType::kEN);
    hard.insert(hard.end(), g.of(NegativeType::kRN).begin(),
                g.of(NegativeType::kRN).end());
    std::vector<double> easy = g.of(NegativeType::kPRN);
    easy.insert(easy.end(), g.of(NegativeType::kGN).begin(),
                g.of(NegativeType::kGN).end());
    const size_t hi = Count(rng, 0, hard.size() - 1);
    const size_t ei = Count(rng, 0, easy.size() - 1);

    const LossBreakdown b = GhclLossAndGrad(g);
    std::vector<double> hard_grads = b.grads(NegativeType::kEN);
    hard_grads.insert(hard_grads.end(), b.grads(NegativeType::kRN).begin(),
                      b.grads(NegativeType::kRN).end());
    std::vector<double> easy_grads = b.grads(NegativeType::kPRN);
    easy_grads.insert(easy_grads.end(), b.grads(NegativeType::kGN).begin(),
                      b.grads(NegativeType::kGN).end());

    const double r_ghcl = hard_grads[hi] / easy_grads[ei];
    const double r_org = GradientRatioOrg(hard[hi], easy[ei]);
    const double predicted = r_org * CorrectionFactor(g.positive, hard, easy);
    report.max_error =
        std::max(report.max_error, std::abs(r_ghcl - predicted) /
                                       std::max(1.0, std::abs(r_ghcl)));

    double hard_sum = 0.0, easy_sum = 0.0;
    for (double s : hard) hard_sum += std::exp(s);
    for (double s : easy) easy_sum += std::exp(s);
    if (hard_sum > easy_sum) {
      ++report.hard_heavier;
      if (!(r_ghcl < r_org)) ++report.ordering_violations;
    }
  }
  return report;
}

FiniteDiffReport RunFiniteDiffSuite(uint64_t seed, int64_t cases) {
  if (cases < 1) throw Error(ErrorCode::kInvalidInput, "cases must be >= 1");
  FiniteDiffReport report;
  Rng rng = MakeStream(seed, {kLossTag});
  const double temperatures[] = {1.0, 0.5, 2.0};
  for (int64_t c = 0; c < cases; ++c) {
    const GroupedLogits g = RandomGroups(rng);
    const double temp = temperatures[c % 3];
    TypeWeights lambda;
    for (double& l : lambda.lambda) l = Uniform(rng, 1, 0.1, 2.0)[0];
    const double l_en = Uniform(rng, 1, 0.1, 2.0)[0];
    const double l_rn = Uniform(rng, 1, 0.1, 2.0)[0];

    using LossFn = std::function<LossBreakdown(const GroupedLogits&)>;
    const LossFn losses[] = {
        [&](const GroupedLogits& x) { return PooledInfoNce(x, temp); },
        [&](const GroupedLogits& x) { return GhclLossAndGrad(x, temp); },
        [&](const GroupedLogits& x) { return CombinedLight(x, lambda, temp); },
        [&](const GroupedLogits& x) {
          return CombinedComplex(x, l_en, l_rn, temp);
        },
    };
    for (const LossFn& loss : losses) {
      const double err = StencilError(
          [&](const std::vector<double>& x) {
            return loss(Unflatten(g, x)).total;
          },
          Flatten(g), FlattenGrads(loss(g)));
      report.loss_max_error = std::max(report.loss_max_error, err);
      ++report.loss_checks;
    }

    const std::vector<double> logits = Uniform(rng, Count(rng, 1, 12), -4, 4);
    std::vector<int> labels(logits.size());
    for (int& y : labels) y = static_cast<int>(Count(rng, 0, 1));
    using BceFn = std::function<BceResult(std::span<const double>,
                                          std::span<const int>)>;
    const BceFn bces[] = {BceLossAndGrad, GlobalBce};
    for (const BceFn& bce : bces) {
      const double err = StencilError(
          [&](const std::vector<double>& x) { return bce(x, labels).loss; },
          logits, bce(logits, labels).grads);
      report.loss_max_error = std::max(report.loss_max_error, err);
      ++report.loss_checks;
    }
  }

  Rng mlp_rng = MakeStream(seed, {kMlpTag});
  for (int64_t c = 0; c < cases; ++c) {
    const size_t user_dim = Count(mlp_rng, 1, 6);
    const size_t item_dim = Count(mlp_rng, 1, 6);
    LayerDims dims{user_dim + item_dim};
    const size_t hidden_layers = Count(mlp_rng, 1, 2);
    for (size_t l = 0; l < hidden_layers; ++l) {
      dims.push_back(Count(mlp_rng, 2, 8));
    }
    dims.push_back(1);
    const MlpScorer scorer = MlpScorer::Initialized(dims, mlp_rng());
    const auto user = Uniform(mlp_rng, user_dim, -1.0, 1.0);
    const auto item = Uniform(mlp_rng, item_dim, -1.0, 1.0);
    const double upstream = Uniform(mlp_rng, 1, -2.0, 2.0)[0];
    report.mlp_max_error =
        std::max(report.mlp_max_error,
                 FiniteDiffCheck(scorer, user, item, upstream, 1e-5));
    ++report.mlp_checks;
  }
  return report;
}

}  // namespace hetrank::cli
