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

#include "hetrank/common/rng.h"

#include <vector>

namespace hetrank {

Rng MakeStream(uint64_t seed, std::initializer_list<uint64_t> keys) {
  std::vector<uint32_t> words;
  words.reserve(2 + 2 * keys.size());
  auto push = [&words](uint64_t v) {
    words.push_back(static_cast<uint32_t>(v & 0xffffffffULL));
    words.push_back(static_cast<uint32_t>(v >> 32));
  };
  push(seed);
  for (uint64_t k : keys) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace hetrank
