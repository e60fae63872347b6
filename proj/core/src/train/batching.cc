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

#include "hetrank/train/batching.h"

#include <algorithm>
#include <numeric>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"

namespace hetrank {

GroupedRequest GroupRequest(const Request& request, int sequence_length) {
  GroupedRequest out;
  out.request_id = request.request_id;
  out.user_id = request.user_id;
  out.samples = request.samples;
  std::stable_sort(out.samples.begin(), out.samples.end(),
                   [](const LabeledSample& a, const LabeledSample& b) {
                     return static_cast<int>(a.type) < static_cast<int>(b.type);
                   });
  if (out.samples.size() > static_cast<size_t>(sequence_length)) {
    out.samples.resize(static_cast<size_t>(sequence_length));
  }
  return out;
}

Batcher::Batcher(std::span<const Request> corpus, const BatchConfig& config)
    : corpus_(corpus), config_(config) {
  if (config_.sequence_length < 1) {
    throw Error(ErrorCode::kConfig, "sequence_length must be >= 1");
  }
  if (config_.batch_requests < 1) {
    throw Error(ErrorCode::kConfig, "batch_requests must be >= 1");
  }
  if (corpus_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "training corpus is empty");
  }
}

const std::vector<size_t>& Batcher::Permutation(int64_t epoch) {
  if (epoch != cached_epoch_) {
    cached_permutation_.resize(corpus_.size());
    std::iota(cached_permutation_.begin(), cached_permutation_.end(),
              size_t{0});
    Rng rng = MakeStream(config_.seed,
                         {stream::kShuffle, static_cast<uint64_t>(epoch)});
    std::shuffle(cached_permutation_.begin(), cached_permutation_.end(), rng);
    cached_epoch_ = epoch;
  }
  return cached_permutation_;
}

std::vector<GroupedRequest> Batcher::Batch(int64_t step) {
  const auto n = static_cast<int64_t>(corpus_.size());
  std::vector<GroupedRequest> batch;
  batch.reserve(static_cast<size_t>(config_.batch_requests));
  for (int64_t k = 0; k < config_.batch_requests; ++k) {
    const int64_t position = step * config_.batch_requests + k;
    const auto& perm = Permutation(position / n);
    batch.push_back(GroupRequest(corpus_[perm[static_cast<size_t>(position % n)]],
                                 config_.sequence_length));
  }
  return batch;
}

std::vector<GroupedRequest> BatchRequests(std::span<const Request> corpus,
                                          const BatchConfig& config,
                                          int64_t step) {
  Batcher batcher(corpus, config);
  return batcher.Batch(step);
}

}  // namespace hetrank
