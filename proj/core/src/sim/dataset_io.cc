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

#include "hetrank/sim/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "hetrank/common/error.h"

namespace hetrank {

using nlohmann::json;

namespace {

std::unordered_map<int32_t, int32_t> RankIndex(
    const std::vector<int32_t>& stage) {
  std::unordered_map<int32_t, int32_t> index;
  index.reserve(stage.size());
  for (size_t i = 0; i < stage.size(); ++i) {
    index.emplace(stage[i], static_cast<int32_t>(i + 1));
  }
  return index;
}

json RankOrNull(const std::unordered_map<int32_t, int32_t>& index,
                int32_t item) {
  auto it = index.find(item);
  if (it == index.end()) return nullptr;
  return it->second;
}

std::vector<double> ToVector(std::span<const double> s) {
  return std::vector<double>(s.begin(), s.end());
}

}  // namespace

void WriteDataset(std::span<const Request> requests,
                  const FeatureTable* features, std::ostream& out) {
  for (const Request& req : requests) {
    const auto retrieval = RankIndex(req.retrieval);
    const auto preranking = RankIndex(req.preranking);
    const auto ranking = RankIndex(req.ranking);
    std::unordered_map<int32_t, bool> clicked;
    for (size_t i = 0; i < req.exposed.size(); ++i) {
      clicked[req.exposed[i]] = req.clicked[i] != 0;
    }

    json line;
    line["schema_version"] = kDatasetSchemaVersion;
    line["request_id"] = req.request_id;
    line["user_id"] = req.user_id;
    line["timestamp"] = req.timestamp;
    if (features != nullptr) {
      line["user_features"] = ToVector(features->user(req.user_id));
    }
    line["stages"] = {{"retrieval", req.retrieval},
                      {"preranking", req.preranking},
                      {"ranking", req.ranking}};
    json candidates = json::array();
    for (const LabeledSample& s : req.samples) {
      json c;
      c["item_id"] = s.item_id;
      if (features != nullptr) {
        c["item_features"] = ToVector(features->item(s.item_id));
      }
      c["stage_ranks"] = {{"retrieval", RankOrNull(retrieval, s.item_id)},
                          {"preranking", RankOrNull(preranking, s.item_id)},
                          {"ranking", RankOrNull(ranking, s.item_id)}};
      auto it = clicked.find(s.item_id);
      c["exposed"] = it != clicked.end();
      c["clicked"] = it != clicked.end() && it->second;
      c["neg_type"] = std::string(SampleTypeName(s.type));
      candidates.push_back(std::move(c));
    }
    line["candidates"] = std::move(candidates);
    out << line.dump() << '\n';
  }
}

void ExportDataset(std::span<const Request> requests,
                   const FeatureTable* features,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteDataset(requests, features, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

namespace {

Request ParseRequest(const json& line, int64_t line_no,
                     DatasetFeatures& features) {
  if (!line.is_object()) throw ParseError(line_no, "record is not an object");
  const int version = line.at("schema_version").get<int>();
  if (version != kDatasetSchemaVersion) {
    throw Error(ErrorCode::kVersion,
                "line " + std::to_string(line_no) + ": schema_version " +
                    std::to_string(version) + " is not supported (expected " +
                    std::to_string(kDatasetSchemaVersion) + ")");
  }
  Request req;
  req.request_id = line.at("request_id").get<int64_t>();
  req.user_id = line.at("user_id").get<int64_t>();
  req.timestamp = line.at("timestamp").get<int64_t>();
  if (auto it = line.find("user_features");
      it != line.end() && !it->is_null()) {
    features.users[req.user_id] = it->get<std::vector<double>>();
  }
  const json& stages = line.at("stages");
  req.retrieval = stages.at("retrieval").get<std::vector<int32_t>>();
  req.preranking = stages.at("preranking").get<std::vector<int32_t>>();
  req.ranking = stages.at("ranking").get<std::vector<int32_t>>();

  struct Exposure {
    int32_t rank;
    int32_t item;
    bool clicked;
  };
  std::vector<Exposure> exposures;
  for (const json& c : line.at("candidates")) {
    LabeledSample s;
    s.user_id = req.user_id;
    s.item_id = c.at("item_id").get<int32_t>();
    const auto type = ParseSampleType(c.at("neg_type").get<std::string>());
    if (!type) {
      throw ParseError(line_no, "unknown neg_type for item " +
                                    std::to_string(s.item_id));
    }
    s.type = *type;
    s.label = s.type == SampleType::kEP ? 1 : 0;
    const json& ranks = c.at("stage_ranks");
    auto rank_of = [&ranks](const char* stage) -> std::optional<int32_t> {
      auto it = ranks.find(stage);
      if (it == ranks.end() || it->is_null()) return std::nullopt;
      return it->get<int32_t>();
    };
    switch (s.type) {
      case SampleType::kEP:
      case SampleType::kEN:
      case SampleType::kRN:
        s.stage_rank = rank_of("ranking");
        break;
      case SampleType::kPRN:
        s.stage_rank = rank_of("preranking");
        break;
      case SampleType::kGN:
        break;
    }
    if (c.value("exposed", false)) {
      if (!s.stage_rank.has_value()) {
        throw ParseError(line_no, "exposed item without a ranking rank");
      }
      exposures.push_back({*rank_of("ranking"), s.item_id,
                           c.value("clicked", false)});
    }
    if (auto it = c.find("item_features"); it != c.end() && !it->is_null()) {
      features.items[s.item_id] = it->get<std::vector<double>>();
    }
    req.samples.push_back(s);
  }
  std::sort(exposures.begin(), exposures.end(),
            [](const Exposure& a, const Exposure& b) { return a.rank < b.rank; });
  for (const Exposure& e : exposures) {
    req.exposed.push_back(e.item);
    req.clicked.push_back(e.clicked ? 1 : 0);
  }
  return req;
}

}  // namespace

ImportedDataset ReadDataset(std::istream& in) {
  ImportedDataset out;
  std::string text;
  int64_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json line;
    try {
      line = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    try {
      out.requests.push_back(ParseRequest(line, line_no, out.features));
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("bad record: ") + e.what());
    }
  }
  return out;
}

ImportedDataset ImportDataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadDataset(in);
}

}  // namespace hetrank
