// Copyright 2026 The qmlp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmlp/error.hpp"

namespace qmlp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kDuplicateTarget: return "DuplicateTarget";
    case ErrorCode::kOverlapError: return "OverlapError";
    case ErrorCode::kNonUnitaryInput: return "NonUnitaryInput";
    case ErrorCode::kFormatOverflow: return "FormatOverflow";
    case ErrorCode::kComplexInputUnsupported: return "ComplexInputUnsupported";
    case ErrorCode::kBatchShapeMismatch: return "BatchShapeMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyPlan: return "EmptyPlan";
    case ErrorCode::kCancellationFailure: return "CancellationFailure";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kAmbiguousSign: return "AmbiguousSign";
    case ErrorCode::kNotSeparableWithinBudget: return "NotSeparableWithinBudget";
    case ErrorCode::kZeroMatrix: return "ZeroMatrix";
    case ErrorCode::kInsufficientRuns: return "InsufficientRuns";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kDatasetParseError: return "DatasetParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNaNForbidden: return "NaNForbidden";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qmlp
