// Copyright 2026 The WitnessForge Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wforge::cli {

/// Exit statuses of the `wforge` tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,        // bad arguments, unreadable or invalid input files
    kDomain = 2,       // interval/hypothesis violations, non-witness verdicts
    kNumerical = 3,    // solver non-convergence
};

/// Runs one invocation. `args` excludes the program name. JSON reports go to
/// `out`, human-readable summaries to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wforge::cli
