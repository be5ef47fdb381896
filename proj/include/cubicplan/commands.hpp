// Copyright 2026 The cubicplan Authors
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

#ifndef CUBICPLAN__COMMANDS_HPP_
#define CUBICPLAN__COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace cubicplan
{

/// Process exit codes of the command-line tool.
enum ExitCode : int
{
  kExitOk = 0,
  kExitConfig = 1,
  kExitNonConvergence = 2,
  kExitChartEscape = 3,
  kExitNotMinimizer = 4,
  kExitNumerical = 5,
};

struct CommandOptions
{
  std::string config;
  std::string out = ".";
  std::optional<double> step;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> trajectory;
  std::optional<double> t1;
};

/// Runs plan, verify, scan, sweep or oracle-compare, writing artifacts into
/// options.out, and maps failures to exit codes. Diagnostics go to err.
int run_command(
  const std::string & command, const CommandOptions & options, std::ostream & out,
  std::ostream & err);

}  // namespace cubicplan

#endif  // CUBICPLAN__COMMANDS_HPP_
