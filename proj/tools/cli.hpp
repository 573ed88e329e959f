// Copyright 2026 The SliceMend Authors
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


#ifndef SLICEMEND_TOOLS_CLI_HPP_
#define SLICEMEND_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace slicemend::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kNoFailingTests = 3,
  kNoPatch = 4,
  kPatchInvalidOnFullSuite = 5,
};

inline constexpr const char* kStepBudgetEnv = "SLICEMEND_STEP_BUDGET";

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and JSON error reports to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicemend::cli

#endif  // SLICEMEND_TOOLS_CLI_HPP_
