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

#ifndef HETRANK_SIM_DATASET_IO_H_
#define HETRANK_SIM_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/world.h"

namespace hetrank {

inline constexpr int kDatasetSchemaVersion = 1;

// JSONL, one request per line:
//
//   {"schema_version": 1, "request_id": 7, "user_id": 311,
//    "timestamp": 1700000105, "user_features": [...],
//    "stages": {"retrieval": [ids], "preranking": [ids], "ranking": [ids]},
//    "candidates": [
//      {"item_id": 42, "item_features": [...],
//       "stage_ranks": {"retrieval": 3, "preranking": 1, "ranking": 2},
//       "exposed": true, "clicked": false, "neg_type": "EN"}, ...]}
//
// `candidates` lists every labeled sample of the request in sample order
// (exposed items are always samples). Stage ranks are 1-based and null when
// the item did not reach that stage. Feature arrays are optional on import.
struct DatasetFeatures {
  std::map<int64_t, std::vector<double>> users;
  std::map<int32_t, std::vector<double>> items;
};

struct ImportedDataset {
  std::vector<Request> requests;
  DatasetFeatures features;
};

// Features are written when `features` is non-null.
void WriteDataset(std::span<const Request> requests,
                  const FeatureTable* features, std::ostream& out);
void ExportDataset(std::span<const Request> requests,
                   const FeatureTable* features,
                   const std::filesystem::path& path);

// Throws ParseError naming the 1-based line on malformed input and a version
// error on a schema_version mismatch.
ImportedDataset ReadDataset(std::istream& in);
ImportedDataset ImportDataset(const std::filesystem::path& path);

}  // namespace hetrank

#endif  // HETRANK_SIM_DATASET_IO_H_
