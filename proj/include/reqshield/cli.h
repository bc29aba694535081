// Copyright 2026 The reqshield Authors.
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

#ifndef REQSHIELD_CLI_H_
#define REQSHIELD_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace reqshield {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;  // `check` found violations
inline constexpr int kExitInputError = 2;  // bad input or compile error
inline constexpr int kExitGuaranteeFailed =
    3;  // corrected output not compliant

// Runs `reqshield <compile|apply|check> [flags]`. args[0] is the program
// name. Every flag can also come from a SHIELD_* environment variable; flags
// win.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace reqshield

#endif  // REQSHIELD_CLI_H_
