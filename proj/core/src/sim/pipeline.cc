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

#include "hetrank/sim/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

struct Scored {
  double score;
  int32_t item;
};

bool Better(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;
}

// Keeps the best `keep` entries, sorted best first.
std::vector<int32_t> KeepTop(std::vector<Scored>& scored, size_t keep) {
  keep = std::min(keep, scored.size());
  if (keep < scored.size()) {
    std::nth_element(scored.begin(), scored.begin() + keep, scored.end(),
                     Better);
    scored.resize(keep);
  }
  std::sort(scored.begin(), scored.end(), Better);
  std::vector<int32_t> out;
  out.reserve(scored.size());
  for (const auto& s : scored) out.push_back(s.item);
  return out;
}

std::vector<int32_t> Rescore(const World& world, int64_t user_id,
                             const std::vector<int32_t>& items, double noise,
                             size_t keep, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Scored> scored;
  scored.reserve(items.size());
  for (int32_t item : items) {
    scored.push_back(
        {world.Relevance(user_id, item) + noise * normal(rng), item});
  }
  return KeepTop(scored, keep);
}

// Uniform subset of `pool` of the given size, returned in pool order.
std::vector<int32_t> SampleSubset(const std::vector<int32_t>& pool,
                                  size_t count, Rng& rng) {
  if (count >= pool.size()) return pool;
  std::vector<size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<int32_t> out;
  out.reserve(count);
  for (size_t i : idx) out.push_back(pool[i]);
  return out;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(retrieval_size > preranking_keep && preranking_keep > ranking_keep &&
        ranking_keep >= exposure_size && exposure_size > 0)) {
    throw Error(ErrorCode::kConfig,
                "pipeline sizes must satisfy retrieval_size > preranking_keep "
                "> ranking_keep >= exposure_size > 0");
  }
  if (!(noise.retrieval >= noise.preranking &&
        noise.preranking >= noise.ranking && noise.ranking >= 0.0)) {
    throw Error(ErrorCode::kConfig,
                "stage noise must be non-negative and non-increasing "
                "downstream");
  }
  if (!(rank_l > 0 && rank_l < ranking_keep)) {
    throw Error(ErrorCode::kConfig, "rank_l must lie in (0, ranking_keep)");
  }
  if (!(prerank_l > 0 && prerank_l < preranking_keep)) {
    throw Error(ErrorCode::kConfig,
                "prerank_l must lie in (0, preranking_keep)");
  }
  if (rn_cap < 0 || prn_cap < 0) {
    throw Error(ErrorCode::kConfig, "sample caps must be non-negative");
  }
  if (!(gn_ratio > 0.0)) throw Error(ErrorCode::kConfig, "gn_ratio must be > 0");
}

int Request::num_clicks() const {
  int n = 0;
  for (uint8_t c : clicked) n += c != 0 ? 1 : 0;
  return n;
}

Request SimulateRequest(const World& world, int64_t user_id,
                        const PipelineConfig& config, Rng& rng) {
  if (user_id < 0 || user_id >= world.n_users()) {
    throw Error(ErrorCode::kInvalidInput,
                "user " + std::to_string(user_id) + " does not exist");
  }
  if (config.retrieval_size > world.n_items()) {
    throw Error(ErrorCode::kConfig, "retrieval_size exceeds the item catalog");
  }
  Request req;
  req.user_id = user_id;

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Scored> all;
  all.reserve(static_cast<size_t>(world.n_items()));
  for (int64_t item = 0; item < world.n_items(); ++item) {
    all.push_back({world.Relevance(user_id, item) +
                       config.noise.retrieval * normal(rng),
                   static_cast<int32_t>(item)});
  }
  req.retrieval = KeepTop(all, static_cast<size_t>(config.retrieval_size));
  req.preranking =
      Rescore(world, user_id, req.retrieval, config.noise.preranking,
              static_cast<size_t>(config.preranking_keep), rng);
  req.ranking = Rescore(world, user_id, req.preranking, config.noise.ranking,
                        static_cast<size_t>(config.ranking_keep), rng);
  req.exposed.assign(req.ranking.begin(),
                     req.ranking.begin() + config.exposure_size);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  req.clicked.reserve(req.exposed.size());
  for (int32_t item : req.exposed) {
    req.clicked.push_back(unit(rng) < world.ClickProbability(user_id, item)
                              ? 1
                              : 0);
  }
  return req;
}

std::vector<LabeledSample> ConstructSamples(const Request& request,
                                            const PipelineConfig& config,
                                            Rng& rng) {
  std::vector<LabeledSample> out;
  std::vector<int32_t> tagged;  // sorted item ids already emitted

  auto is_tagged = [&tagged](int32_t item) {
    return std::binary_search(tagged.begin(), tagged.end(), item);
  };
  auto tag = [&tagged](int32_t item) {
    tagged.insert(std::upper_bound(tagged.begin(), tagged.end(), item), item);
  };

  int clicks = 0;
  for (size_t i = 0; i < request.exposed.size(); ++i) {
    const bool click = request.clicked[i] != 0;
    clicks += click ? 1 : 0;
    out.push_back({request.user_id, request.exposed[i], click ? 1 : 0,
                   click ? SampleType::kEP : SampleType::kEN,
                   static_cast<int32_t>(i + 1)});
  }
  // Positives first, exposure order within each label.
  std::stable_partition(out.begin(), out.end(),
                        [](const LabeledSample& s) { return s.label == 1; });
  for (int32_t item : request.exposed) tag(item);

  // RN: ranking rank > rank_l and not exposed.
  std::vector<int32_t> rn_pool;
  for (size_t i = static_cast<size_t>(config.rank_l);
       i < request.ranking.size(); ++i) {
    if (!is_tagged(request.ranking[i])) rn_pool.push_back(request.ranking[i]);
  }
  std::vector<int32_t> rn_blocked = rn_pool;
  std::sort(rn_blocked.begin(), rn_blocked.end());
  const auto rn = SampleSubset(rn_pool, static_cast<size_t>(config.rn_cap),
                               rng);
  {
    // Ranking rank of each RN item: position in the ranking list.
    for (int32_t item : rn) {
      const auto pos = std::find(request.ranking.begin(),
                                 request.ranking.end(), item) -
                       request.ranking.begin();
      out.push_back({request.user_id, item, 0, SampleType::kRN,
                     static_cast<int32_t>(pos + 1)});
      tag(item);
    }
  }

  // PRN: pre-ranking rank > prerank_l; items eligible for RN keep precedence
  // even when the cap left them unsampled.
  std::vector<int32_t> prn_pool;
  std::vector<int32_t> prn_rank;
  for (size_t i = static_cast<size_t>(config.prerank_l);
       i < request.preranking.size(); ++i) {
    const int32_t item = request.preranking[i];
    if (is_tagged(item) ||
        std::binary_search(rn_blocked.begin(), rn_blocked.end(), item)) {
      continue;
    }
    prn_pool.push_back(item);
  }
  const auto prn = SampleSubset(prn_pool, static_cast<size_t>(config.prn_cap),
                                rng);
  for (int32_t item : prn) {
    const auto pos = std::find(request.preranking.begin(),
                               request.preranking.end(), item) -
                     request.preranking.begin();
    out.push_back({request.user_id, item, 0, SampleType::kPRN,
                   static_cast<int32_t>(pos + 1)});
    tag(item);
  }

  // GN: uniform over the remaining retrieval candidates, 1:gn_ratio to EP.
  const auto gn_count = static_cast<size_t>(
      std::llround(config.gn_ratio * static_cast<double>(clicks)));
  if (gn_count > 0) {
    std::vector<int32_t> gn_pool;
    gn_pool.reserve(request.retrieval.size());
    for (int32_t item : request.retrieval) {
      if (!is_tagged(item)) gn_pool.push_back(item);
    }
    std::vector<int32_t> gn = SampleSubset(gn_pool, gn_count, rng);
    std::shuffle(gn.begin(), gn.end(), rng);
    for (int32_t item : gn) {
      out.push_back({request.user_id, item, 0, SampleType::kGN, std::nullopt});
    }
  }
  return out;
}

std::vector<Request> GenerateCorpus(const World& world,
                                    const PipelineConfig& config,
                                    int64_t n_requests, uint64_t seed) {
  config.Validate();
  if (n_requests < 0) {
    throw Error(ErrorCode::kConfig, "n_requests must be non-negative");
  }
  constexpr int64_t kEpoch = 1'700'000'000;
  std::vector<Request> corpus;
  corpus.reserve(static_cast<size_t>(n_requests));
  for (int64_t id = 0; id < n_requests; ++id) {
    Rng user_rng = MakeStream(seed, {stream::kUsers, static_cast<uint64_t>(id)});
    std::uniform_int_distribution<int64_t> pick_user(0, world.n_users() - 1);
    const int64_t user = pick_user(user_rng);

    Rng rng = MakeStream(seed, {stream::kRequest, static_cast<uint64_t>(id)});
    Request req = SimulateRequest(world, user, config, rng);
    req.request_id = id;
    req.timestamp = kEpoch + 15 * id;

    Rng sample_rng =
        MakeStream(seed, {stream::kSamples, static_cast<uint64_t>(id)});
    req.samples = ConstructSamples(req, config, sample_rng);
    corpus.push_back(std::move(req));
  }
  return corpus;
}

CorpusSplit SplitChronologically(std::vector<Request> requests,
                                 double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kConfig, "train_fraction must lie in (0, 1)");
  }
  std::stable_sort(requests.begin(), requests.end(),
                   [](const Request& a, const Request& b) {
                     return a.timestamp < b.timestamp;
                   });
  const auto n_train = static_cast<size_t>(
      std::floor(train_fraction * static_cast<double>(requests.size())));
  CorpusSplit split;
  split.train.assign(std::make_move_iterator(requests.begin()),
                     std::make_move_iterator(requests.begin() + n_train));
  split.test.assign(std::make_move_iterator(requests.begin() + n_train),
                    std::make_move_iterator(requests.end()));
  return split;
}

}  // namespace hetrank
