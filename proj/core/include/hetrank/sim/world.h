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

#ifndef HETRANK_SIM_WORLD_H_
#define HETRANK_SIM_WORLD_H_

#include <cstdint>
#include <span>

#include "hetrank/model/dense.h"

namespace hetrank {

struct WorldConfig {
  int64_t n_users = 1000;
  int64_t n_items = 5000;
  size_t latent_dim = 8;
  // With clusters > 0 the first latent_dim - fine_dims coordinates hold
  // c_k + spread * g / sqrt(coarse dims) around one of `clusters` shared unit
  // centroids, and the last fine_dims coordinates hold fine_scale * h /
  // sqrt(fine_dims); g and h are standard normal, k is uniform, and the row is
  // then normalized. clusters = 0 gives isotropic latents.
  int64_t clusters = 16;
  double user_spread = 0.3;
  double item_spread = 0.3;
  size_t fine_dims = 4;
  double fine_scale = 1.0;
  // Click probability of an exposed item is
  // sigmoid(click_scale * rel(u, x) + click_bias).
  double click_scale = 40.0;
  double click_bias = -37.0;

  void Validate() const;
};

// Dense per-id feature rows the scorers consume.
struct FeatureTable {
  DenseMatrix users;
  DenseMatrix items;

  std::span<const double> user(int64_t id) const {
    return users.row(static_cast<size_t>(id));
  }
  std::span<const double> item(int64_t id) const {
    return items.row(static_cast<size_t>(id));
  }
  size_t user_dim() const { return users.cols(); }
  size_t item_dim() const { return items.cols(); }
};

// Synthetic ground truth: unit-norm user and item latents. Relevance is their
// dot product, so it always lies in [-1, 1]. Scorers observe the latents as
// their features.
class World {
 public:
  World(const WorldConfig& config, uint64_t seed, DenseMatrix user_latents,
        DenseMatrix item_latents);

  const WorldConfig& config() const { return config_; }
  uint64_t seed() const { return seed_; }
  int64_t n_users() const { return config_.n_users; }
  int64_t n_items() const { return config_.n_items; }

  const DenseMatrix& user_latents() const { return features_.users; }
  const DenseMatrix& item_latents() const { return features_.items; }
  const FeatureTable& features() const { return features_; }

  double Relevance(int64_t user_id, int64_t item_id) const;
  double ClickProbability(int64_t user_id, int64_t item_id) const;
  double ClickProbabilityFromRelevance(double relevance) const;

 private:
  WorldConfig config_;
  uint64_t seed_;
  FeatureTable features_;
};

// Deterministic in (config, seed): identical calls give bit-identical worlds.
World GenerateWorld(const WorldConfig& config, uint64_t seed);

}  // namespace hetrank

#endif  // HETRANK_SIM_WORLD_H_
