/*
 Copyright 2026 The hankelcast Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef HANKELCAST_TOOLS_CLI_HPP
#define HANKELCAST_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hankelcast::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  ///< the check or prediction came back negative
  kUsage = 2,     ///< bad arguments, unreadable or malformed files
};

/// Runs the command line `hankelcast <args...>` (args excludes the program
/// name), writing results to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hankelcast::cli

#endif  // HANKELCAST_TOOLS_CLI_HPP
