/*
 * Copyright 2026 The costbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef COSTBOUND_TOOLS_CLI_H_
#define COSTBOUND_TOOLS_CLI_H_

#include <string>
#include <vector>

namespace costbound::cli {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace costbound::cli

#endif  // COSTBOUND_TOOLS_CLI_H_
