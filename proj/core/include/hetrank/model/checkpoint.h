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

#ifndef HETRANK_MODEL_CHECKPOINT_H_
#define HETRANK_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "hetrank/model/mlp_scorer.h"
#include "hetrank/model/rmsprop.h"

namespace hetrank {

inline constexpr int kCheckpointVersion = 1;

// On-disk JSON document:
//   {
//     "format": "hetrank.scorer", "version": 1,
//     "layer_dims": [in, h1, ..., 1],
//     "preset": "lightweight" | "expressive" | null,
//     "layers": [{"weights": [row-major out x in], "biases": [out]}, ...],
//     "optimizer": null | {"learning_rate", "decay", "epsilon", "step",
//                          "accumulators": [flat, parameter order]},
//     "train_step": n
//   }
// Doubles are written in shortest round-trip form, so save/load is bit exact.
struct Checkpoint {
  MlpScorer scorer;
  std::optional<OptimizerState> optimizer;
  int64_t train_step = 0;
};

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
// Throws a parse error on malformed documents and a version error when the
// version field is not kCheckpointVersion.
Checkpoint ParseCheckpoint(const std::string& text);

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace hetrank

#endif  // HETRANK_MODEL_CHECKPOINT_H_
