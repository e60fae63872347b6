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

#include "hetrank/model/finite_diff.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

using Wide = long double;

// Forward pass over a long double copy of the parameters. In double, the
// difference of two nearby logits loses most of its digits for parameters
// with tiny gradients and the check itself becomes the noise source.
Wide WideForward(const LayerDims& dims, const std::vector<Wide>& theta,
                 std::span<const double> user, std::span<const double> item) {
  std::vector<Wide> a(user.begin(), user.end());
  a.insert(a.end(), item.begin(), item.end());
  size_t offset = 0;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const size_t in = dims[l], out = dims[l + 1];
    const size_t bias = offset + in * out;
    std::vector<Wide> next(out);
    for (size_t i = 0; i < out; ++i) {
      Wide z = theta[bias + i];
      for (size_t j = 0; j < in; ++j) z += theta[offset + i * in + j] * a[j];
      next[i] = l + 2 == dims.size() ? z : std::tanh(z);
    }
    offset = bias + out;
    a = std::move(next);
  }
  return a[0];
}

}  // namespace

double FiniteDiffCheck(const MlpScorer& scorer, std::span<const double> user,
                       std::span<const double> item, double upstream,
                       double epsilon) {
  ActivationTrace trace;
  scorer.Forward(user, item, &trace);
  return FiniteDiffCheck(scorer, user, item, upstream, epsilon,
                         scorer.Backward(trace, upstream));
}

double FiniteDiffCheck(const MlpScorer& scorer, std::span<const double> user,
                       std::span<const double> item, double upstream,
                       double epsilon, const GradientBuffer& analytic) {
  if (!(epsilon > 0.0 && epsilon <= 1e-2)) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must lie in (0, 1e-2]");
  }
  if (!analytic.CongruentWith(scorer.layer_dims())) {
    throw Error(ErrorCode::kShape, "analytic gradient does not match scorer");
  }
  // Shape errors come from the regular forward pass.
  scorer.Forward(user, item);
  const auto params = scorer.parameters();
  std::vector<Wide> theta(params.begin(), params.end());
  const auto a = analytic.values();
  const Wide eps = epsilon;
  double worst = 0.0;
  for (size_t i = 0; i < theta.size(); ++i) {
    const Wide saved = theta[i];
    theta[i] = saved + eps;
    const Wide plus = WideForward(scorer.layer_dims(), theta, user, item);
    theta[i] = saved - eps;
    const Wide minus = WideForward(scorer.layer_dims(), theta, user, item);
    theta[i] = saved;
    const Wide central = upstream * (plus - minus) / (2 * eps);
    worst = std::max(worst, static_cast<double>(std::abs(a[i] - central) /
                                                (std::abs(central) + 1e-12L)));
  }
  return worst;
}

}  // namespace hetrank
