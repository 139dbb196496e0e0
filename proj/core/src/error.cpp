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

#include "pcosrisk/error.hpp"

namespace pcosrisk {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument: return "argument_error";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kEmptyDataset: return "empty_dataset";
    case ErrorCode::kAssignment: return "assignment_error";
    case ErrorCode::kFit: return "fit_error";
    case ErrorCode::kConvergence: return "convergence_error";
    case ErrorCode::kModel: return "model_error";
    case ErrorCode::kCostGuard: return "cost_guard";
    case ErrorCode::kCorruption: return "corruption_error";
    case ErrorCode::kIncompatible: return "incompatible_version";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace pcosrisk
