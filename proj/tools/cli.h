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

#ifndef HTXAI_TOOLS_CLI_H_
#define HTXAI_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace htxai::cli {

// Process exit codes. Stable; listed in the README.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,          // bad flags, missing or unwritable paths, bad config
  kSingleClass = 3,    // training data holds one class only
  kModelMismatch = 4,  // explanation method incompatible with the model file
  kLengthMismatch = 5, // paired inputs of different lengths
  kInfeasible = 6,     // corpus generator configuration cannot be met
  kBadInput = 7,       // malformed netlist, library, labels or CSV
  kBadModel = 8,       // corrupt model file or unsupported schema version
};

// Runs one invocation; args[0] is the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htxai::cli

#endif  // HTXAI_TOOLS_CLI_H_
