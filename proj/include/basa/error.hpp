// Copyright 2026 The Basa Authors.
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

#ifndef BASA_ERROR_HPP_
#define BASA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace basa {

enum class ErrorCode {
  kMalformedItem,
  kMalformedConfig,
  kEmptyInput,
  kEmptyDocument,
  kEmptyDataset,
  kDimensionMismatch,
  kSingleClassDataset,
  kInvalidHyperparams,
  kTooFewRows,
  kEmptyMatrix,
  kEmptyClassRow,
  kUnnormalizedProbabilities,
  kMissingFile,
  kMalformedManifestRow,
  kMalformedFeatures,
  kMalformedModel,
  kInvalidParams,
  kTrainingFailed,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedItem: return "MalformedItem";
    case ErrorCode::kMalformedConfig: return "MalformedConfig";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSingleClassDataset: return "SingleClassDataset";
    case ErrorCode::kInvalidHyperparams: return "InvalidHyperparams";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kEmptyClassRow: return "EmptyClassRow";
    case ErrorCode::kUnnormalizedProbabilities: return "UnnormalizedProbabilities";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kMalformedManifestRow: return "MalformedManifestRow";
    case ErrorCode::kMalformedFeatures: return "MalformedFeatures";
    case ErrorCode::kMalformedModel: return "MalformedModel";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kTrainingFailed: return "TrainingFailed";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

/// Every recoverable failure in the toolkit is reported as an Error carrying
/// a machine-checkable code; what() is "<CodeName>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace basa

#endif  // BASA_ERROR_HPP_
