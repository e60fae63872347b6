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

#ifndef HETRANK_TRAIN_BATCHING_H_
#define HETRANK_TRAIN_BATCHING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "hetrank/sim/pipeline.h"

namespace hetrank {

struct BatchConfig {
  // Max samples kept per request.
  int sequence_length = 45;
  int batch_requests = 30;
  uint64_t seed = 0;
};

// A request's samples after truncation, ordered EP > EN > RN > PRN > GN.
struct GroupedRequest {
  int64_t request_id = 0;
  int64_t user_id = 0;
  std::vector<LabeledSample> samples;

  friend bool operator==(const GroupedRequest&, const GroupedRequest&) =
      default;
};

// Stable-sorts by type priority and keeps the first sequence_length samples,
// so positives survive truncation whenever any do.
GroupedRequest GroupRequest(const Request& request, int sequence_length);

// Deterministic epoch-wise shuffling. The batch for a step depends only on
// (corpus, config, step), which is what makes resumed runs line up with
// uninterrupted ones.
class Batcher {
 public:
  Batcher(std::span<const Request> corpus, const BatchConfig& config);

  std::vector<GroupedRequest> Batch(int64_t step);

 private:
  const std::vector<size_t>& Permutation(int64_t epoch);

  std::span<const Request> corpus_;
  BatchConfig config_;
  int64_t cached_epoch_ = -1;
  std::vector<size_t> cached_permutation_;
};

std::vector<GroupedRequest> BatchRequests(std::span<const Request> corpus,
                                          const BatchConfig& config,
                                          int64_t step);

}  // namespace hetrank

#endif  // HETRANK_TRAIN_BATCHING_H_
