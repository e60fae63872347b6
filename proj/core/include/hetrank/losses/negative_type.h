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

#ifndef HETRANK_LOSSES_NEGATIVE_TYPE_H_
#define HETRANK_LOSSES_NEGATIVE_TYPE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace hetrank {

// Negative sample types in fixed difficulty order, hardest first.
enum class NegativeType : uint8_t { kEN = 0, kRN = 1, kPRN = 2, kGN = 3 };

inline constexpr size_t kNumNegativeTypes = 4;
inline constexpr std::array<NegativeType, kNumNegativeTypes>
    kAllNegativeTypes = {NegativeType::kEN, NegativeType::kRN,
                         NegativeType::kPRN, NegativeType::kGN};

// Every training atom carries one of these tags; EP is the only positive.
enum class SampleType : uint8_t { kEP = 0, kEN, kRN, kPRN, kGN };

inline constexpr size_t Index(NegativeType t) { return static_cast<size_t>(t); }

// Hard = {EN, RN}, easy = {PRN, GN}.
inline constexpr bool IsHard(NegativeType t) {
  return t == NegativeType::kEN || t == NegativeType::kRN;
}

inline constexpr SampleType ToSampleType(NegativeType t) {
  return static_cast<SampleType>(static_cast<uint8_t>(t) + 1);
}

inline constexpr std::optional<NegativeType> ToNegativeType(SampleType t) {
  if (t == SampleType::kEP) return std::nullopt;
  return static_cast<NegativeType>(static_cast<uint8_t>(t) - 1);
}

std::string_view NegativeTypeName(NegativeType t);
std::string_view SampleTypeName(SampleType t);
std::optional<NegativeType> ParseNegativeType(std::string_view name);
std::optional<SampleType> ParseSampleType(std::string_view name);

}  // namespace hetrank

#endif  // HETRANK_LOSSES_NEGATIVE_TYPE_H_
