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

#ifndef HETRANK_TOOLS_CLI_CLI_H_
#define HETRANK_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "hetrank/experiment/config.h"

namespace hetrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// args excludes the program name. Final summaries go to `out`, everything
// else to `err`. `env` resolves HETRANK_* overrides; empty means none.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const EnvLookup& env = {});

}  // namespace hetrank::cli

#endif  // HETRANK_TOOLS_CLI_CLI_H_
