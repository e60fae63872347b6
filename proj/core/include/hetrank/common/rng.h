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

#ifndef HETRANK_COMMON_RNG_H_
#define HETRANK_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hetrank {

using Rng = std::mt19937_64;

// Independent stream keyed by (seed, keys...). Two calls with the same
// arguments produce identical generators regardless of call order, which is
// what lets request simulation and serving run in any schedule.
Rng MakeStream(uint64_t seed, std::initializer_list<uint64_t> keys);

// Stream-derivation tags so different consumers of one seed never collide.
namespace stream {
inline constexpr uint64_t kWorld = 0x776f726c64ULL;
inline constexpr uint64_t kRequest = 0x72657175ULL;
inline constexpr uint64_t kSamples = 0x73616d70ULL;
inline constexpr uint64_t kUsers = 0x75736572ULL;
inline constexpr uint64_t kInit = 0x696e6974ULL;
inline constexpr uint64_t kShuffle = 0x73687566ULL;
inline constexpr uint64_t kServe = 0x73657276ULL;
}  // namespace stream

}  // namespace hetrank

#endif  // HETRANK_COMMON_RNG_H_
