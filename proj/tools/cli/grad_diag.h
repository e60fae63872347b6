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

#ifndef HETRANK_TOOLS_CLI_GRAD_DIAG_H_
#define HETRANK_TOOLS_CLI_GRAD_DIAG_H_

#include <cstdint>

namespace hetrank::cli {

// R_GHCL is read off the actual GHCL logit gradients and compared with
// R_ORG * C, relative to max(1, |R_GHCL|).
struct RatioIdentityReport {
  int64_t cases = 0;
  double max_error = 0.0;
  // Cases whose hard exp-sum exceeds the easy one, and how many of them did
  // not shrink the ratio.
  int64_t hard_heavier = 0;
  int64_t ordering_violations = 0;
};

RatioIdentityReport CheckRatioIdentity(uint64_t seed, int64_t cases);

// Analytic vs. finite-difference gradients for every loss (5-point stencil
// on logits) and for random scorers (central differences on parameters).
struct FiniteDiffReport {
  int64_t loss_checks = 0;
  double loss_max_error = 0.0;
  int64_t mlp_checks = 0;
  double mlp_max_error = 0.0;
};

FiniteDiffReport RunFiniteDiffSuite(uint64_t seed, int64_t cases);

inline constexpr double kRatioTolerance = 1e-12;
inline constexpr double kFiniteDiffTolerance = 1e-6;

}  // namespace hetrank::cli

#endif  // HETRANK_TOOLS_CLI_GRAD_DIAG_H_
