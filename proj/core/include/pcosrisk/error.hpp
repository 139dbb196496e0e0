// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCOSRISK_ERROR_HPP_
#define PCOSRISK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcosrisk {

// Failure categories shared by the library, the CLI and the HTTP API.
enum class ErrorCode {
  kArgument,
  kSchema,
  kValidation,
  kEmptyDataset,
  kAssignment,
  kFit,
  kConvergence,
  kModel,
  kCostGuard,
  kCorruption,
  kIncompatible,
  kNotFound,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  // Offending column / feature / request field, when one applies.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace pcosrisk

#endif  // PCOSRISK_ERROR_HPP_
