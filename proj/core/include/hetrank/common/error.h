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

#ifndef HETRANK_COMMON_ERROR_H_
#define HETRANK_COMMON_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hetrank {

enum class ErrorCode {
  kInputShape,
  kShape,
  kDivergence,
  kConfig,
  kInvalidInput,
  kParse,
  kVersion,
  kUndefinedMetric,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Base of every error thrown by the library. The code lets callers (the CLI in
// particular) map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(int64_t step, const std::string& message);

  int64_t step() const { return step_; }

 private:
  int64_t step_;
};

class ParseError : public Error {
 public:
  ParseError(int64_t line, const std::string& message);

  // 1-based line number in the offending file, 0 when not line oriented.
  int64_t line() const { return line_; }

 private:
  int64_t line_;
};

}  // namespace hetrank

#endif  // HETRANK_COMMON_ERROR_H_
