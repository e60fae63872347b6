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

#include "hetrank/model/checkpoint.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hetrank/common/error.h"

namespace hetrank {

using nlohmann::json;

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  const MlpScorer& s = checkpoint.scorer;
  json doc;
  doc["format"] = "hetrank.scorer";
  doc["version"] = kCheckpointVersion;
  doc["layer_dims"] = s.layer_dims();
  if (s.preset().has_value()) {
    doc["preset"] = std::string(CapacityPresetName(*s.preset()));
  } else {
    doc["preset"] = nullptr;
  }
  json layers = json::array();
  for (size_t l = 0; l < s.num_layers(); ++l) {
    const auto w = s.weights(l);
    const auto b = s.biases(l);
    layers.push_back({{"weights", std::vector<double>(w.begin(), w.end())},
                      {"biases", std::vector<double>(b.begin(), b.end())}});
  }
  doc["layers"] = std::move(layers);
  if (checkpoint.optimizer.has_value()) {
    const OptimizerState& o = *checkpoint.optimizer;
    doc["optimizer"] = {{"learning_rate", o.config.learning_rate},
                        {"decay", o.config.decay},
                        {"epsilon", o.config.epsilon},
                        {"step", o.step},
                        {"accumulators", o.accumulators}};
  } else {
    doc["optimizer"] = nullptr;
  }
  doc["train_step"] = checkpoint.train_step;
  return doc.dump(1) + "\n";
}

Checkpoint ParseCheckpoint(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("checkpoint: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "hetrank.scorer") {
      throw ParseError(0, "checkpoint: unexpected format tag");
    }
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw Error(ErrorCode::kVersion,
                  "checkpoint version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kCheckpointVersion) + ")");
    }
    auto dims = doc.at("layer_dims").get<LayerDims>();
    std::optional<CapacityPreset> preset;
    if (!doc.at("preset").is_null()) {
      preset = ParseCapacityPreset(doc.at("preset").get<std::string>());
      if (!preset) throw ParseError(0, "checkpoint: unknown preset");
    }
    Checkpoint out{MlpScorer(dims, preset), std::nullopt, 0};
    const auto& layers = doc.at("layers");
    if (layers.size() != out.scorer.num_layers()) {
      throw ParseError(0, "checkpoint: layer count mismatch");
    }
    for (size_t l = 0; l < layers.size(); ++l) {
      const auto w = layers[l].at("weights").get<std::vector<double>>();
      const auto b = layers[l].at("biases").get<std::vector<double>>();
      auto dst_w = out.scorer.mutable_weights(l);
      auto dst_b = out.scorer.mutable_biases(l);
      if (w.size() != dst_w.size() || b.size() != dst_b.size()) {
        throw ParseError(0, "checkpoint: layer " + std::to_string(l) +
                                " has the wrong number of parameters");
      }
      std::copy(w.begin(), w.end(), dst_w.begin());
      std::copy(b.begin(), b.end(), dst_b.begin());
    }
    const auto& opt = doc.at("optimizer");
    if (!opt.is_null()) {
      OptimizerState state;
      state.config.learning_rate = opt.at("learning_rate").get<double>();
      state.config.decay = opt.at("decay").get<double>();
      state.config.epsilon = opt.at("epsilon").get<double>();
      state.step = opt.at("step").get<int64_t>();
      state.accumulators = opt.at("accumulators").get<std::vector<double>>();
      if (state.accumulators.size() != out.scorer.parameter_count()) {
        throw ParseError(0, "checkpoint: optimizer state size mismatch");
      }
      out.optimizer = std::move(state);
    }
    out.train_step = doc.value("train_step", int64_t{0});
    return out;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << SerializeCheckpoint(checkpoint);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCheckpoint(buffer.str());
}

}  // namespace hetrank
