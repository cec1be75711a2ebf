// Copyright 2026 The msgate Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msgate {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitSolver = 3,
    kExitIo = 4,
};

/// Entry point of the `msgate` tool. Frequencies at this boundary are in Hz
/// (chirp in Hz/us) and times in us; everything behind it is rad/s and s.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses START:STOP:STEP into the inclusive arithmetic sequence.
std::vector<double> parse_range(const std::string& range);

}  // namespace msgate
