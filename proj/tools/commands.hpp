// Copyright 2026 The gchar Authors
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

#ifndef GCHAR_TOOLS_COMMANDS_HPP
#define GCHAR_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gchar::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNotConverged = 3,
};

/// Environment variable that overrides the OpenMP thread count.
inline constexpr const char* kThreadsEnv = "GCHAR_NUM_THREADS";

/// Runs one command line (args[0] is the program name). Normal output goes
/// to `out`, warnings and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gchar::cli

#endif  // GCHAR_TOOLS_COMMANDS_HPP
