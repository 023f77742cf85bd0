// Copyright 2026 The triwave Authors
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

#ifndef TRIWAVE_CLI_HPP
#define TRIWAVE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace triwave {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;

/// Runs one subcommand (`stage1`, `stage2`, `pipeline`, `scaling`,
/// `block-info`). `args` excludes the program name. Results go to the file
/// named by --out; a one-line summary goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace triwave

#endif  // TRIWAVE_CLI_HPP
