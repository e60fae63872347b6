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

#ifndef HETRANK_TESTS_ORACLE_ORACLE_H_
#define HETRANK_TESTS_ORACLE_ORACLE_H_

// Reference implementations used only to check the library. They favour
// obviousness and extended precision over speed and share no code with core.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hetrank/losses/losses.h"
#include "hetrank/model/mlp_scorer.h"

namespace hetrank::oracle {

using Real = long double;
using Vec = std::vector<Real>;

// -log(e^p / (e^p + sum e^n)), computed directly at extended precision.
inline Real InfoNce(Real pos, const Vec& negs, Real temperature = 1) {
  Real denom = std::exp(pos / temperature);
  for (Real n : negs) denom += std::exp(n / temperature);
  return -(pos / temperature) + std::log(denom);
}

inline Real Bce(Real z, int y) {
  const Real p = 1 / (1 + std::exp(-z));
  return y ? -std::log(p) : -std::log(1 - p);
}

// Logits laid out as [positive, EN..., RN..., PRN..., GN...].
struct Layout {
  std::array<size_t, kNumNegativeTypes> counts{};

  static Layout Of(const GroupedLogits& g) {
    Layout l;
    for (NegativeType t : kAllNegativeTypes) l.counts[Index(t)] = g.of(t).size();
    return l;
  }
  size_t size() const {
    size_t n = 1;
    for (size_t c : counts) n += c;
    return n;
  }
  Vec Group(const Vec& x, NegativeType t) const {
    size_t start = 1;
    for (size_t i = 0; i < Index(t); ++i) start += counts[i];
    return Vec(x.begin() + start, x.begin() + start + counts[Index(t)]);
  }
};

inline Vec Flatten(const GroupedLogits& g) {
  Vec x{g.positive};
  for (NegativeType t : kAllNegativeTypes) {
    for (double v : g.of(t)) x.push_back(v);
  }
  return x;
}

inline std::vector<double> FlattenGrads(const LossBreakdown& b) {
  std::vector<double> x{b.grad_positive};
  for (NegativeType t : kAllNegativeTypes) {
    x.insert(x.end(), b.grads(t).begin(), b.grads(t).end());
  }
  return x;
}

inline Vec Concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Real Pooled(const Layout& l, const Vec& x, Real temp) {
  Vec negs;
  for (NegativeType t : kAllNegativeTypes) negs = Concat(negs, l.Group(x, t));
  return InfoNce(x[0], negs, temp);
}

inline Real Ghcl(const Layout& l, const Vec& x, Real temp) {
  const Vec hard =
      Concat(l.Group(x, NegativeType::kEN), l.Group(x, NegativeType::kRN));
  const Vec easy =
      Concat(l.Group(x, NegativeType::kPRN), l.Group(x, NegativeType::kGN));
  Real total = 0;
  if (!hard.empty()) total += InfoNce(x[0], hard, temp);
  if (!easy.empty()) total += InfoNce(x[0], easy, temp);
  return total;
}

inline Real WeightedPerType(const Layout& l, const Vec& x,
                            const std::array<Real, kNumNegativeTypes>& lambda,
                            Real temp) {
  Real total = 0;
  for (NegativeType t : kAllNegativeTypes) {
    const Vec negs = l.Group(x, t);
    if (!negs.empty() && lambda[Index(t)] != 0) {
      total += lambda[Index(t)] * InfoNce(x[0], negs, temp);
    }
  }
  return total;
}

// Five-point central difference of f at every coordinate of x. Below about
// 1e-3 the step is limited by long double roundoff on losses of order 10.
inline Vec Gradient(const std::function<Real(const Vec&)>& f, Vec x,
                    Real h = 1e-3L) {
  Vec grad(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const Real saved = x[i];
    auto at = [&](Real offset) {
      x[i] = saved + offset;
      return f(x);
    };
    grad[i] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    x[i] = saved;
  }
  return grad;
}

// Largest |a - n| / max(|n|, floor) over coordinates.
inline double MaxRelativeError(std::span<const double> analytic, const Vec& numeric,
                               Real floor = 1e-6L) {
  Real worst = 0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    const Real scale = std::max(std::abs(numeric[i]), floor);
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
  }
  return static_cast<double>(worst);
}

// Straight affine chain over the scorer's weight layout (out x in, row-major).
inline Real Forward(const MlpScorer& s, std::span<const double> user,
                    std::span<const double> item) {
  Vec a;
  for (double v : user) a.push_back(v);
  for (double v : item) a.push_back(v);
  const auto& dims = s.layer_dims();
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto w = s.weights(l);
    const auto b = s.biases(l);
    Vec next(dims[l + 1]);
    for (size_t i = 0; i < dims[l + 1]; ++i) {
      Real z = b[i];
      for (size_t j = 0; j < dims[l]; ++j) z += w[i * dims[l] + j] * a[j];
      next[i] = l + 2 == dims.size() ? z : std::tanh(z);
    }
    a = next;
  }
  return a[0];
}

// Fraction of (positive, negative) pairs ordered correctly, ties count half.
inline double BruteForceAuc(std::span<const double> scores,
                            std::span<const int> labels) {
  Real good = 0;
  Real pairs = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      pairs += 1;
      if (scores[i] > scores[j]) good += 1;
      else if (scores[i] == scores[j]) good += 0.5L;
    }
  }
  return static_cast<double>(good / pairs);
}

}  // namespace hetrank::oracle

#endif  // HETRANK_TESTS_ORACLE_ORACLE_H_
