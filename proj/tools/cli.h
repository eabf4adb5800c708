/* Copyright 2026 The SAFit Eval Authors. All Rights Reserved.

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

#ifndef SAFIT_TOOLS_CLI_H_
#define SAFIT_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace safit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Environment variable read for the default of --workers.
inline constexpr const char* kWorkersEnv = "SAFIT_EVAL_WORKERS";

// Runs one `safit-eval` invocation. args[0] is the program name. Human
// output goes to `out`; errors go to `err` as a human line followed by a
// one-line JSON object.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace safit::cli

#endif  // SAFIT_TOOLS_CLI_H_
