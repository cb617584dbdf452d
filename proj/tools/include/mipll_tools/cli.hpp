// Copyright 2026 The mipll Authors.
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

#ifndef MIPLL_TOOLS_CLI_HPP_
#define MIPLL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "mipll_tools/config.hpp"

namespace mipll::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConditionFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitTrainingFailed = 3;

/// Runs the command line `args` (without the program name), writing to `out`
/// and `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the shipped presets; MIPLL_PRESET_DIR in the
/// environment overrides the compiled-in location.
std::string preset_directory();

/// Loads `<preset_directory()>/<name>.cfg`.
KeyValueConfig load_preset(const std::string& name);

/// Evaluates one calculator from `bounds <name> key=value ...` and returns
/// the printed line.
std::string evaluate_bound(const std::string& name, const KeyValueConfig& args);

}  // namespace mipll::tools

#endif  // MIPLL_TOOLS_CLI_HPP_
