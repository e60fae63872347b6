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

#ifndef HETRANK_TESTS_UNIT_TEST_UTIL_H_
#define HETRANK_TESTS_UNIT_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hetrank/experiment/config.h"

namespace hetrank::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string name = "hetrank_";
    if (info != nullptr) {
      name += std::string(info->test_suite_name()) + "_" + info->name();
    }
    path_ = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Scaled-down world and pipeline that keep every default constraint valid.
inline ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.world.n_users = 200;
  cfg.world.n_items = 1500;
  cfg.pipeline.retrieval_size = 800;
  cfg.pipeline.preranking_keep = 300;
  cfg.pipeline.ranking_keep = 100;
  cfg.corpus.n_requests = 600;
  cfg.train.steps = 40;
  cfg.train.batch_requests = 8;
  cfg.train.telemetry_every = 5;
  cfg.sweep.G_values = {50, 200, 800};
  cfg.sweep.requests = 40;
  return cfg;
}

}  // namespace hetrank::testing

#endif  // HETRANK_TESTS_UNIT_TEST_UTIL_H_
