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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specmodes/cli/registry.hpp"

namespace specmodes::cli {

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  /// steps evenly spaced values from start to stop inclusive.
  std::vector<double> values() const;
};

/// Parses "name=start:stop:steps", or "start:stop:steps" when `parameter` is given.
SweepSpec parse_sweep(std::string_view text, std::string_view parameter = {});

enum class Format { Auto, Csv, Json };

Format parse_format(std::string_view text);

struct RunConfig {
  std::string experiment;
  /// Fully resolved parameter values.
  ParamSet params;
  std::optional<SweepSpec> sweep;
  /// Empty writes to standard output.
  std::string output_path;
  Format format = Format::Auto;
  /// 0 picks the number of hardware threads.
  unsigned jobs = 0;

  /// Throws ConfigError on any invalid field.
  void validate() const;
  Format resolved_format() const;
};

/// Contents of a JSON config file (comments allowed). Every section is optional.
struct ConfigFile {
  std::optional<std::string> experiment;
  ParamSet params;
  std::optional<SweepSpec> sweep;
  std::optional<std::string> output_path;
  std::optional<Format> format;
  std::optional<unsigned> jobs;
  std::optional<bool> degenerate;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config_file(const std::string& path);

}  // namespace specmodes::cli
