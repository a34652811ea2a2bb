// Copyright 2026 The spdevops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPDEVOPS_TOOLS_CLI_H_
#define SPDEVOPS_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace spdevops::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // a policy failed, deployment rejected,
                                   // or a troubleshooting run broke
inline constexpr int kUsage = 2;
inline constexpr int kBadInput = 3;  // unreadable or malformed file

// Runs `spdevops <args...>`. args excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace spdevops::cli

#endif  // SPDEVOPS_TOOLS_CLI_H_
