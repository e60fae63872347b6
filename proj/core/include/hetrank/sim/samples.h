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

#ifndef HETRANK_SIM_SAMPLES_H_
#define HETRANK_SIM_SAMPLES_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hetrank/sim/pipeline.h"

namespace hetrank {

enum class TestSetId { kTEN = 0, kTRN, kTPRN, kTGN, kTHard, kTEasy };

inline constexpr std::array<TestSetId, 6> kAllTestSets = {
    TestSetId::kTEN,  TestSetId::kTRN,   TestSetId::kTPRN,
    TestSetId::kTGN,  TestSetId::kTHard, TestSetId::kTEasy};

const char* TestSetName(TestSetId id);

// Whether a negative of type t belongs to the given set.
bool TestSetIncludes(TestSetId id, NegativeType t);

// Every test set holds all EP positives plus only its negative type(s).
// Requests without a click contribute nothing.
struct TestSet {
  TestSetId id = TestSetId::kTEN;
  std::vector<LabeledSample> rows;

  size_t num_positives() const;
  size_t num_negatives() const;
};

struct TestSets {
  std::array<TestSet, 6> sets;

  const TestSet& operator[](TestSetId id) const {
    return sets[static_cast<size_t>(id)];
  }
};

TestSets BuildTestSets(std::span<const Request> requests);

// Per-type sample counts and mean ground-truth relevance over a corpus.
struct CorpusStats {
  int64_t requests = 0;
  int64_t clickless_requests = 0;
  std::array<int64_t, 5> count{};          // indexed by SampleType
  std::array<double, 5> mean_relevance{};  // indexed by SampleType
};

CorpusStats ComputeCorpusStats(const World& world,
                               std::span<const Request> requests);

}  // namespace hetrank

#endif  // HETRANK_SIM_SAMPLES_H_
