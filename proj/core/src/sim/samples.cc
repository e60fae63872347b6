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

#include "hetrank/sim/samples.h"

namespace hetrank {

const char* TestSetName(TestSetId id) {
  switch (id) {
    case TestSetId::kTEN:
      return "TEN";
    case TestSetId::kTRN:
      return "TRN";
    case TestSetId::kTPRN:
      return "TPRN";
    case TestSetId::kTGN:
      return "TGN";
    case TestSetId::kTHard:
      return "THard";
    case TestSetId::kTEasy:
      return "TEasy";
  }
  return "?";
}

bool TestSetIncludes(TestSetId id, NegativeType t) {
  switch (id) {
    case TestSetId::kTEN:
      return t == NegativeType::kEN;
    case TestSetId::kTRN:
      return t == NegativeType::kRN;
    case TestSetId::kTPRN:
      return t == NegativeType::kPRN;
    case TestSetId::kTGN:
      return t == NegativeType::kGN;
    case TestSetId::kTHard:
      return IsHard(t);
    case TestSetId::kTEasy:
      return !IsHard(t);
  }
  return false;
}

size_t TestSet::num_positives() const {
  size_t n = 0;
  for (const auto& r : rows) n += r.label == 1 ? 1 : 0;
  return n;
}

size_t TestSet::num_negatives() const { return rows.size() - num_positives(); }

TestSets BuildTestSets(std::span<const Request> requests) {
  TestSets out;
  for (TestSetId id : kAllTestSets) out.sets[static_cast<size_t>(id)].id = id;
  for (const Request& req : requests) {
    if (req.clickless()) continue;
    for (const LabeledSample& s : req.samples) {
      const auto neg = ToNegativeType(s.type);
      for (TestSetId id : kAllTestSets) {
        if (!neg.has_value() || TestSetIncludes(id, *neg)) {
          out.sets[static_cast<size_t>(id)].rows.push_back(s);
        }
      }
    }
  }
  return out;
}

CorpusStats ComputeCorpusStats(const World& world,
                               std::span<const Request> requests) {
  CorpusStats stats;
  std::array<double, 5> rel_sum{};
  for (const Request& req : requests) {
    ++stats.requests;
    if (req.clickless()) ++stats.clickless_requests;
    for (const LabeledSample& s : req.samples) {
      const auto k = static_cast<size_t>(s.type);
      ++stats.count[k];
      rel_sum[k] += world.Relevance(s.user_id, s.item_id);
    }
  }
  for (size_t k = 0; k < 5; ++k) {
    stats.mean_relevance[k] =
        stats.count[k] > 0 ? rel_sum[k] / static_cast<double>(stats.count[k])
                           : 0.0;
  }
  return stats;
}

}  // namespace hetrank
