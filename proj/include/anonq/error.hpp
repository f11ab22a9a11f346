// Copyright 2026 The anonq Authors
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

#ifndef ANONQ_ERROR_HPP
#define ANONQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace anonq {

enum class ErrorCode {
  // Query rejection (CLI exit code 2).
  kSyntaxError,
  kForbiddenFeature,
  kUnknownColumn,
  kTypeMismatch,
  kUntrustedConstraint,
  // Data loading and configuration.
  kIoError,
  kSchemaMismatch,
  kTypeParseError,
  kNullAid,
  kMissingAid,
  kAidAlreadyConfigured,
  kEntropyUnavailable,
  kSaltMismatch,
  kInvalidParams,
  kInvalidConfig,
  // Attack bench.
  kBaselineOne,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // True for errors caused by the input (query or config) rather than the
  // system; these map to CLI exit code 2.
  bool is_rejection() const {
    switch (code_) {
      case ErrorCode::kSyntaxError:
      case ErrorCode::kForbiddenFeature:
      case ErrorCode::kUnknownColumn:
      case ErrorCode::kTypeMismatch:
      case ErrorCode::kUntrustedConstraint:
      case ErrorCode::kInvalidParams:
      case ErrorCode::kInvalidConfig:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace anonq

#endif  // ANONQ_ERROR_HPP
