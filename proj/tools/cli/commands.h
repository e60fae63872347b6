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

#ifndef HETRANK_TOOLS_CLI_COMMANDS_H_
#define HETRANK_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetrank/experiment/config.h"

namespace hetrank::cli {

// Bad flag values the argument parser cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  ExperimentConfig config;
  std::filesystem::path out_dir;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

struct GenerateOptions {
  std::optional<int64_t> requests;
};

struct TrainOptions {
  std::string regime;
  std::string type;
  std::string preset;
  std::optional<int64_t> steps;
  std::string name;
  std::string corpus;
  bool resume = false;
};

struct ModelOptions {
  std::string name = "hap_full";
  std::string light;
  std::string complex;
  std::string corpus;
};

struct SweepOptions {
  ModelOptions models;
  std::vector<int64_t> G;
};

struct CompareOptions {
  std::string hap = "hap_full";
  std::string unified = "unified";
  std::string corpus;
};

struct GradDiagOptions {
  std::optional<double> s_p;
  std::vector<double> hard;
  std::vector<double> easy;
  size_t hard_index = 0;
  size_t easy_index = 0;
  int64_t cases = 10000;
  int64_t fd_cases = 100;
  bool fd = false;
};

// Each returns a process exit code; failures are thrown.
int RunGenerate(const Context& ctx, const GenerateOptions& opts);
int RunTrain(const Context& ctx, const TrainOptions& opts);
int RunEval(const Context& ctx, const ModelOptions& opts);
int RunSweepGate(const Context& ctx, const SweepOptions& opts);
int RunCompareUnified(const Context& ctx, const CompareOptions& opts);
int RunGradDiag(const Context& ctx, const GradDiagOptions& opts);

}  // namespace hetrank::cli

#endif  // HETRANK_TOOLS_CLI_COMMANDS_H_
