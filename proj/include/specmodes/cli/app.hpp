// Copyright 2026 The specmodes Authors
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
#include <vector>

#include "specmodes/cli/config.hpp"
#include "specmodes/cli/registry.hpp"

namespace specmodes::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

/// Runs every sweep point (or the single point) on a pool of config.jobs
/// workers; results come back in sweep order.
std::vector<Report> evaluate(const RunConfig& config);

/// Evaluates, validates and writes the output. Returns an exit code; errors
/// are reported on `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specmodes::cli
