// Copyright 2026 The contam-audit Authors
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

#ifndef CONTAM_CLI_HPP_
#define CONTAM_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace contam::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFlagged = 2;

// Entry point behind the contam-audit binary. `args` excludes the program
// name. Subcommands: detect, eval, cliff, generate.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace contam::cli

#endif  // CONTAM_CLI_HPP_
