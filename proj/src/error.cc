// Copyright 2026 The htxai Authors. All Rights Reserved.
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

#include "htxai/error.h"

namespace htxai {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::kUnknownCell: return "UnknownCell";
    case ErrorCode::kUnknownPin: return "UnknownPin";
    case ErrorCode::kMultipleDrivers: return "MultipleDrivers";
    case ErrorCode::kUndrivenNet: return "UndrivenNet";
    case ErrorCode::kCombinationalCycle: return "CombinationalCycle";
    case ErrorCode::kMalformedLabelFile: return "MalformedLabelFile";
    case ErrorCode::kMalformedLibrary: return "MalformedLibrary";
    case ErrorCode::kUnknownNet: return "UnknownNet";
    case ErrorCode::kEmptyStratum: return "EmptyStratum";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kSingleClassDataset: return "SingleClassDataset";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kCorruptModel: return "CorruptModel";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMismatchedLengths: return "MismatchedLengths";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kInfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::kInsufficientNets: return "InsufficientNets";
  }
  return "Unknown";
}

}  // namespace htxai
