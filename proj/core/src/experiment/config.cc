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

#include "hetrank/experiment/config.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hetrank/common/error.h"

namespace hetrank {
namespace {

using Json = nlohmann::ordered_json;

Json ToJson(const ExperimentConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["world"] = {{"n_users", c.world.n_users},
                {"n_items", c.world.n_items},
                {"latent_dim", c.world.latent_dim},
                {"clusters", c.world.clusters},
                {"user_spread", c.world.user_spread},
                {"item_spread", c.world.item_spread},
                {"fine_dims", c.world.fine_dims},
                {"fine_scale", c.world.fine_scale},
                {"click_scale", c.world.click_scale},
                {"click_bias", c.world.click_bias}};
  const PipelineConfig& p = c.pipeline;
  j["pipeline"] = {{"retrieval_size", p.retrieval_size},
                   {"preranking_keep", p.preranking_keep},
                   {"ranking_keep", p.ranking_keep},
                   {"exposure_size", p.exposure_size},
                   {"noise_retrieval", p.noise.retrieval},
                   {"noise_preranking", p.noise.preranking},
                   {"noise_ranking", p.noise.ranking},
                   {"rank_l", p.rank_l},
                   {"prerank_l", p.prerank_l},
                   {"rn_cap", p.rn_cap},
                   {"prn_cap", p.prn_cap},
                   {"gn_ratio", p.gn_ratio}};
  j["corpus"] = {{"n_requests", c.corpus.n_requests},
                 {"train_fraction", c.corpus.train_fraction}};
  j["model"] = {{"lightweight_hidden", c.model.architecture.lightweight_hidden},
                {"expressive_hidden", c.model.architecture.expressive_hidden},
                {"preset", CapacityPresetName(c.model.preset)}};
  const TrainConfig& t = c.train;
  j["train"] = {{"regime", LossRegimeName(t.regime)},
                {"single_type", NegativeTypeName(t.single_type)},
                {"lambda_EN", t.lambda[NegativeType::kEN]},
                {"lambda_RN", t.lambda[NegativeType::kRN]},
                {"lambda_PRN", t.lambda[NegativeType::kPRN]},
                {"lambda_GN", t.lambda[NegativeType::kGN]},
                {"alpha", t.alpha},
                {"global_target", GlobalTargetName(t.global_target)},
                {"positive_reduction",
                 PositiveReductionName(t.positive_reduction)},
                {"temperature", t.temperature},
                {"sequence_length", t.sequence_length},
                {"batch_requests", t.batch_requests},
                {"steps", t.steps},
                {"learning_rate", t.optimizer.learning_rate},
                {"decay", t.optimizer.decay},
                {"epsilon", t.optimizer.epsilon},
                {"telemetry_every", t.telemetry_every}};
  j["eval"] = {{"gauc", c.eval.gauc_on},
               {"positives", PositiveScoringName(c.eval.positives)}};
  j["cascade"] = {
      {"G", c.gate.G},
      {"final_k", c.gate.final_k},
      {"base_latency_ms", c.cost.base_latency_ms},
      {"ms_per_megaflop", c.cost.ms_per_megaflop},
      {"capacity_megaflops", c.cost.capacity_megaflops_per_request},
      {"overload_failure_slope", c.cost.overload_failure_slope},
      {"failure_latency_penalty_ms", c.cost.failure_latency_penalty_ms},
      {"failures_enabled", c.cost.failures_enabled},
      {"sweep_G", c.sweep.G_values},
      {"sweep_requests", c.sweep.requests}};
  j["benchmark"] = {{"seeds", c.benchmark.seeds}};
  return j;
}

bool SameKind(const Json& want, const Json& got) {
  if (want.is_number()) {
    if (!got.is_number()) return false;
    if (want.is_number_integer()) return got.is_number_integer();
    return true;
  }
  if (want.is_array()) {
    if (!got.is_array()) return false;
    for (const Json& e : got) {
      if (!e.is_number_integer()) return false;
    }
    return true;
  }
  return want.type() == got.type();
}

[[noreturn]] void Fail(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config key '" + key + "': " + what);
}

// Overlays `in` onto `base` after checking every key against it.
void Overlay(Json& base, const Json& in, const std::string& prefix) {
  if (!in.is_object()) {
    Fail(prefix.empty() ? "<root>" : prefix, "expected an object");
  }
  for (const auto& [key, value] : in.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) {
      throw Error(ErrorCode::kConfig, "unknown config key '" + name + "'");
    }
    Json& slot = base[key];
    if (slot.is_object()) {
      Overlay(slot, value, name);
      continue;
    }
    if (!SameKind(slot, value)) Fail(name, "wrong type " +
                                               std::string(value.type_name()));
    if (slot.is_number_unsigned() && value.is_number_integer() &&
        value.get<int64_t>() < 0) {
      Fail(name, "must be non-negative");
    }
    slot = value;
  }
}

template <typename T>
T Get(const Json& j, const char* section, const char* key) {
  return section ? j.at(section).at(key).get<T>() : j.at(key).get<T>();
}

template <typename E, typename ParseFn>
E GetEnum(const Json& j, const char* section, const char* key, ParseFn parse) {
  const auto s = Get<std::string>(j, section, key);
  const auto v = parse(s);
  if (!v) Fail(std::string(section) + "." + key, "unknown value '" + s + "'");
  return *v;
}

ExperimentConfig FromJson(const Json& j) {
  ExperimentConfig c;
  c.seed = Get<uint64_t>(j, nullptr, "seed");
  c.output_dir = Get<std::string>(j, nullptr, "output_dir");

  c.world.n_users = Get<int64_t>(j, "world", "n_users");
  c.world.n_items = Get<int64_t>(j, "world", "n_items");
  c.world.latent_dim = Get<size_t>(j, "world", "latent_dim");
  c.world.clusters = Get<int64_t>(j, "world", "clusters");
  c.world.user_spread = Get<double>(j, "world", "user_spread");
  c.world.item_spread = Get<double>(j, "world", "item_spread");
  c.world.fine_dims = Get<size_t>(j, "world", "fine_dims");
  c.world.fine_scale = Get<double>(j, "world", "fine_scale");
  c.world.click_scale = Get<double>(j, "world", "click_scale");
  c.world.click_bias = Get<double>(j, "world", "click_bias");

  PipelineConfig& p = c.pipeline;
  p.retrieval_size = Get<int>(j, "pipeline", "retrieval_size");
  p.preranking_keep = Get<int>(j, "pipeline", "preranking_keep");
  p.ranking_keep = Get<int>(j, "pipeline", "ranking_keep");
  p.exposure_size = Get<int>(j, "pipeline", "exposure_size");
  p.noise.retrieval = Get<double>(j, "pipeline", "noise_retrieval");
  p.noise.preranking = Get<double>(j, "pipeline", "noise_preranking");
  p.noise.ranking = Get<double>(j, "pipeline", "noise_ranking");
  p.rank_l = Get<int>(j, "pipeline", "rank_l");
  p.prerank_l = Get<int>(j, "pipeline", "prerank_l");
  p.rn_cap = Get<int>(j, "pipeline", "rn_cap");
  p.prn_cap = Get<int>(j, "pipeline", "prn_cap");
  p.gn_ratio = Get<double>(j, "pipeline", "gn_ratio");

  c.corpus.n_requests = Get<int64_t>(j, "corpus", "n_requests");
  c.corpus.train_fraction = Get<double>(j, "corpus", "train_fraction");

  c.model.architecture.lightweight_hidden =
      Get<std::vector<size_t>>(j, "model", "lightweight_hidden");
  c.model.architecture.expressive_hidden =
      Get<std::vector<size_t>>(j, "model", "expressive_hidden");
  c.model.preset = GetEnum<CapacityPreset>(j, "model", "preset",
                                           ParseCapacityPreset);

  TrainConfig& t = c.train;
  t.regime = GetEnum<LossRegime>(j, "train", "regime", ParseLossRegime);
  t.single_type =
      GetEnum<NegativeType>(j, "train", "single_type", ParseNegativeType);
  t.lambda[NegativeType::kEN] = Get<double>(j, "train", "lambda_EN");
  t.lambda[NegativeType::kRN] = Get<double>(j, "train", "lambda_RN");
  t.lambda[NegativeType::kPRN] = Get<double>(j, "train", "lambda_PRN");
  t.lambda[NegativeType::kGN] = Get<double>(j, "train", "lambda_GN");
  t.alpha = Get<double>(j, "train", "alpha");
  t.global_target = GetEnum<GlobalTarget>(j, "train", "global_target",
                                          ParseGlobalTarget);
  t.positive_reduction = GetEnum<PositiveReduction>(
      j, "train", "positive_reduction", ParsePositiveReduction);
  t.temperature = Get<double>(j, "train", "temperature");
  t.sequence_length = Get<int>(j, "train", "sequence_length");
  t.batch_requests = Get<int>(j, "train", "batch_requests");
  t.steps = Get<int64_t>(j, "train", "steps");
  t.optimizer.learning_rate = Get<double>(j, "train", "learning_rate");
  t.optimizer.decay = Get<double>(j, "train", "decay");
  t.optimizer.epsilon = Get<double>(j, "train", "epsilon");
  t.telemetry_every = Get<int64_t>(j, "train", "telemetry_every");
  t.seed = c.seed;

  c.eval.gauc_on = Get<bool>(j, "eval", "gauc");
  c.eval.positives = GetEnum<PositiveScoring>(j, "eval", "positives",
                                              ParsePositiveScoring);

  c.gate.G = Get<int64_t>(j, "cascade", "G");
  c.gate.final_k = Get<int64_t>(j, "cascade", "final_k");
  c.cost.base_latency_ms = Get<double>(j, "cascade", "base_latency_ms");
  c.cost.ms_per_megaflop = Get<double>(j, "cascade", "ms_per_megaflop");
  c.cost.capacity_megaflops_per_request =
      Get<double>(j, "cascade", "capacity_megaflops");
  c.cost.overload_failure_slope =
      Get<double>(j, "cascade", "overload_failure_slope");
  c.cost.failure_latency_penalty_ms =
      Get<double>(j, "cascade", "failure_latency_penalty_ms");
  c.cost.failures_enabled = Get<bool>(j, "cascade", "failures_enabled");
  c.sweep.G_values = Get<std::vector<int64_t>>(j, "cascade", "sweep_G");
  c.sweep.requests = Get<int64_t>(j, "cascade", "sweep_requests");

  c.benchmark.seeds = Get<std::vector<uint64_t>>(j, "benchmark", "seeds");
  return c;
}

std::string Upper(std::string s) {
  for (char& ch : s) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return s;
}

template <typename Fn>
void ForEachLeaf(const Json& j, Fn fn) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [sub, leaf] : value.items()) fn(key, sub);
    } else {
      fn(std::string(), key);
    }
  }
}

std::string EnvName(const std::string& section, const std::string& key) {
  return "HETRANK_" + (section.empty() ? "" : Upper(section) + "_") +
         Upper(key);
}

}  // namespace

void ExperimentConfig::Validate() const {
  auto wrap = [](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig,
                  std::string("section '") + section + "': " + e.what());
    }
  };
  wrap("world", [&] { world.Validate(); });
  wrap("pipeline", [&] { pipeline.Validate(); });
  wrap("model", [&] { model.architecture.Validate(); });
  wrap("train", [&] { train.Validate(); });
  wrap("cascade", [&] {
    gate.Validate();
    cost.Validate();
    for (int64_t g : sweep.G_values) GateConfig{g, gate.final_k}.Validate();
  });
  if (corpus.n_requests < 1) {
    throw Error(ErrorCode::kConfig, "config key 'corpus.n_requests' must be >= 1");
  }
  if (!(corpus.train_fraction > 0.0 && corpus.train_fraction < 1.0)) {
    throw Error(ErrorCode::kConfig,
                "config key 'corpus.train_fraction' must be in (0, 1)");
  }
  if (sweep.requests < 1) {
    throw Error(ErrorCode::kConfig,
                "config key 'cascade.sweep_requests' must be >= 1");
  }
  if (gate.G > pipeline.retrieval_size) {
    throw Error(ErrorCode::kConfig,
                "config key 'cascade.G' exceeds pipeline.retrieval_size");
  }
}

std::string SerializeExperimentConfig(const ExperimentConfig& cfg) {
  return ToJson(cfg).dump(2) + "\n";
}

ExperimentConfig ParseExperimentConfig(const std::string& text) {
  Json in;
  try {
    in = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("config is not valid JSON: ") +
                                        e.what());
  }
  Json merged = ToJson(ExperimentConfig{});
  Overlay(merged, in, "");
  ExperimentConfig c;
  try {
    c = FromJson(merged);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfig(buf.str());
}

ExperimentConfig ApplyEnvironmentOverrides(const ExperimentConfig& cfg,
                                           const EnvLookup& lookup) {
  const Json base = ToJson(cfg);
  Json patch = Json::object();
  bool any = false;
  ForEachLeaf(base, [&](const std::string& section, const std::string& key) {
    const char* raw = lookup(EnvName(section, key));
    if (raw == nullptr) return;
    Json value = Json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = std::string(raw);
    Json single = Json::object();
    if (section.empty()) {
      single[key] = value;
      patch[key] = value;
    } else {
      single[section][key] = value;
      patch[section][key] = value;
    }
    try {
      Json probe = base;
      Overlay(probe, single, "");
      FromJson(probe);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, EnvName(section, key) + ": " + e.what());
    }
    any = true;
  });
  if (!any) return cfg;
  Json merged = base;
  Overlay(merged, patch, "");
  ExperimentConfig c = FromJson(merged);
  c.Validate();
  return c;
}

std::vector<std::string> EnvironmentOverrideNames() {
  std::vector<std::string> names;
  ForEachLeaf(ToJson(ExperimentConfig{}),
              [&](const std::string& section, const std::string& key) {
                names.push_back(EnvName(section, key));
              });
  return names;
}

}  // namespace hetrank
