// Copyright 2026 The tailfit Authors.
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

#ifndef TAILFIT_CLI_HPP_
#define TAILFIT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace tailfit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDegenerate = 2;

/// Runs the command line `args` (without the program name). `in` stands
/// for the input path "-"; results go to `out` unless an output path is
/// given; diagnostics go to `err` as single lines of the form
/// "tailfit: <code>: <message>". Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace tailfit

#endif  // TAILFIT_CLI_HPP_
