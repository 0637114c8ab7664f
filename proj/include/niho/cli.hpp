/* Copyright 2026 The niho Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NIHO_CLI_HPP_
#define NIHO_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace niho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;  // a report disagrees with the published result
inline constexpr int kExitDisagreement = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitCap = 65;

/// Runs one command line (args[0] is the program name). Reports go to out as
/// JSON lines, or TSV with --tsv; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace niho::cli

#endif  // NIHO_CLI_HPP_
