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

#include "hetrank/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hetrank/common/error.h"
#include "hetrank/losses/losses.h"

namespace hetrank {
namespace {

void CheckLabels(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "scores and labels differ in length");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw Error(ErrorCode::kInvalidInput, "labels must be 0 or 1");
    }
  }
}

void Split(std::span<const ScoredRow> rows, std::vector<double>& scores,
           std::vector<int>& labels) {
  scores.resize(rows.size());
  labels.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    scores[i] = rows[i].score;
    labels[i] = rows[i].label;
  }
}

}  // namespace

double Auc(std::span<const double> scores, std::span<const int> labels) {
  CheckLabels(scores, labels);
  const size_t n = scores.size();
  size_t n_pos = 0;
  for (int y : labels) n_pos += static_cast<size_t>(y);
  const size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "AUC needs at least one positive and one negative");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j+1 share their mean.
    const double mid = 0.5 * static_cast<double>(i + j + 2);
    for (size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) positive_rank_sum += mid;
    }
    i = j + 1;
  }
  const double p = static_cast<double>(n_pos);
  const double q = static_cast<double>(n_neg);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

double Auc(std::span<const ScoredRow> rows) {
  std::vector<double> scores;
  std::vector<int> labels;
  Split(rows, scores, labels);
  return Auc(scores, labels);
}

double BruteForceAuc(std::span<const double> scores,
                     std::span<const int> labels) {
  CheckLabels(scores, labels);
  double wins = 0.0;
  double pairs = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  if (pairs == 0.0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "AUC needs at least one positive and one negative");
  }
  return wins / pairs;
}

double Gauc(std::span<const ScoredRow> rows) {
  std::map<int64_t, std::vector<ScoredRow>> by_user;
  for (const ScoredRow& r : rows) by_user[r.user_id].push_back(r);
  double weighted = 0.0;
  double weight = 0.0;
  for (const auto& [user, user_rows] : by_user) {
    double pos = 0.0;
    for (const ScoredRow& r : user_rows) pos += r.label == 1 ? 1.0 : 0.0;
    const double neg = static_cast<double>(user_rows.size()) - pos;
    if (pos == 0.0 || neg == 0.0) continue;
    const double w = pos * neg;
    weighted += w * Auc(user_rows);
    weight += w;
  }
  if (weight == 0.0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "GAUC needs a user with both labels");
  }
  return weighted / weight;
}

double LogLoss(std::span<const double> probabilities,
               std::span<const int> labels) {
  CheckLabels(probabilities, labels);
  if (probabilities.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "log loss of an empty set");
  }
  constexpr double kClamp = 1e-12;
  double sum = 0.0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    const double p = std::clamp(probabilities[i], kClamp, 1.0 - kClamp);
    sum -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return sum / static_cast<double>(probabilities.size());
}

double LogLoss(std::span<const ScoredRow> rows) {
  std::vector<double> probs;
  std::vector<int> labels;
  Split(rows, probs, labels);
  for (double& p : probs) p = Sigmoid(p);
  return LogLoss(probs, labels);
}

}  // namespace hetrank
