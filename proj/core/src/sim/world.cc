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

#include "hetrank/sim/world.h"

#include <cmath>
#include <random>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"
#include "hetrank/losses/losses.h"

namespace hetrank {
namespace {

DenseMatrix UnitRows(size_t rows, size_t cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (size_t r = 0; r < rows; ++r) {
    auto row = m.mutable_row(r);
    double norm = 0.0;
    while (norm < 1e-12) {
      for (double& v : row) v = normal(rng);
      norm = std::sqrt(SquaredNorm(row));
    }
    for (double& v : row) v /= norm;
  }
  return m;
}

DenseMatrix ClusteredRows(size_t rows, size_t cols, const DenseMatrix& centroids,
                          double spread, double fine_scale, Rng& rng) {
  const size_t coarse = centroids.cols();
  const size_t fine = cols - coarse;
  DenseMatrix m(rows, cols);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<size_t> pick(0, centroids.rows() - 1);
  const double coarse_sd = spread / std::sqrt(static_cast<double>(coarse));
  const double fine_sd =
      fine > 0 ? fine_scale / std::sqrt(static_cast<double>(fine)) : 0.0;
  for (size_t r = 0; r < rows; ++r) {
    const auto c = centroids.row(pick(rng));
    auto row = m.mutable_row(r);
    double norm = 0.0;
    while (norm < 1e-12) {
      for (size_t j = 0; j < coarse; ++j) row[j] = c[j] + coarse_sd * normal(rng);
      for (size_t j = coarse; j < cols; ++j) row[j] = fine_sd * normal(rng);
      norm = std::sqrt(SquaredNorm(row));
    }
    for (double& v : row) v /= norm;
  }
  return m;
}

}  // namespace

void WorldConfig::Validate() const {
  if (n_users <= 0 || n_items <= 0 || latent_dim == 0) {
    throw Error(ErrorCode::kConfig, "world sizes must be positive");
  }
  if (clusters > 0 && fine_dims >= latent_dim) {
    throw Error(ErrorCode::kConfig, "fine_dims must be < latent_dim");
  }
  if (!(fine_scale >= 0.0) || !std::isfinite(fine_scale)) {
    throw Error(ErrorCode::kConfig, "fine_scale must be >= 0");
  }
  if (clusters < 0) throw Error(ErrorCode::kConfig, "clusters must be >= 0");
  if (!(user_spread >= 0.0) || !(item_spread >= 0.0) ||
      !std::isfinite(user_spread) || !std::isfinite(item_spread)) {
    throw Error(ErrorCode::kConfig, "cluster spreads must be >= 0");
  }
  if (!std::isfinite(click_scale) || !std::isfinite(click_bias)) {
    throw Error(ErrorCode::kConfig, "click model parameters must be finite");
  }
}

World::World(const WorldConfig& config, uint64_t seed,
             DenseMatrix user_latents, DenseMatrix item_latents)
    : config_(config),
      seed_(seed),
      features_{std::move(user_latents), std::move(item_latents)} {}

double World::Relevance(int64_t user_id, int64_t item_id) const {
  return Dot(features_.user(user_id), features_.item(item_id));
}

double World::ClickProbabilityFromRelevance(double relevance) const {
  return Sigmoid(config_.click_scale * relevance + config_.click_bias);
}

double World::ClickProbability(int64_t user_id, int64_t item_id) const {
  return ClickProbabilityFromRelevance(Relevance(user_id, item_id));
}

World GenerateWorld(const WorldConfig& config, uint64_t seed) {
  config.Validate();
  Rng user_rng = MakeStream(seed, {stream::kWorld, 0});
  Rng item_rng = MakeStream(seed, {stream::kWorld, 1});
  const auto n_users = static_cast<size_t>(config.n_users);
  const auto n_items = static_cast<size_t>(config.n_items);
  if (config.clusters == 0) {
    auto users = UnitRows(n_users, config.latent_dim, user_rng);
    auto items = UnitRows(n_items, config.latent_dim, item_rng);
    return World(config, seed, std::move(users), std::move(items));
  }
  Rng centroid_rng = MakeStream(seed, {stream::kWorld, 2});
  const DenseMatrix centroids =
      UnitRows(static_cast<size_t>(config.clusters),
               config.latent_dim - config.fine_dims, centroid_rng);
  auto users = ClusteredRows(n_users, config.latent_dim, centroids,
                             config.user_spread, config.fine_scale, user_rng);
  auto items = ClusteredRows(n_items, config.latent_dim, centroids,
                             config.item_spread, config.fine_scale, item_rng);
  return World(config, seed, std::move(users), std::move(items));
}

}  // namespace hetrank
