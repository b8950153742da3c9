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

#ifndef HTXAI_ERROR_H_
#define HTXAI_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace htxai {

// Every failure raised by the library carries one of these codes so callers
// (the CLI in particular) can map them to stable exit statuses.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  // netlist-ir
  kSyntaxError,
  kUnsupportedConstruct,
  kUnknownCell,
  kUnknownPin,
  kMultipleDrivers,
  kUndrivenNet,
  kCombinationalCycle,
  kMalformedLabelFile,
  kMalformedLibrary,
  // feature-extract
  kUnknownNet,
  kEmptyStratum,
  kMalformedCsv,
  // boosted-trees / ensembles
  kSingleClassDataset,
  kSchemaVersionMismatch,
  kCorruptModel,
  // case-based
  kEmptyDataset,
  // eval-stats
  kMismatchedLengths,
  kConstantInput,
  kZeroVariance,
  // benchgen
  kInfeasibleConfig,
  kInsufficientNets,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace htxai

#endif  // HTXAI_ERROR_H_
