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

#include "hetrank/common/error.h"

namespace hetrank {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInputShape:
      return "input-shape";
    case ErrorCode::kShape:
      return "shape";
    case ErrorCode::kDivergence:
      return "divergence";
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kVersion:
      return "version";
    case ErrorCode::kUndefinedMetric:
      return "undefined-metric";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

DivergenceError::DivergenceError(int64_t step, const std::string& message)
    : Error(ErrorCode::kDivergence,
            "training diverged at step " + std::to_string(step) + ": " +
                message),
      step_(step) {}

ParseError::ParseError(int64_t line, const std::string& message)
    : Error(ErrorCode::kParse,
            line > 0 ? "line " + std::to_string(line) + ": " + message
                     : message),
      line_(line) {}

}  // namespace hetrank
