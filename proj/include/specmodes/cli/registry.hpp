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

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace specmodes::cli {

using Report = nlohmann::ordered_json;
using ParamSet = std::map<std::string, double>;

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  std::string help;
  bool integer = false;
};

struct ExperimentSpec {
  std::string name;
  std::string description;
  /// Names from parameter_table(), in help order.
  std::vector<std::string> params;
  /// Report fields emitted per sweep row; array fields expand to name_0, name_1, ...
  std::vector<std::string> csv_columns;
  std::function<Report(const ParamSet&)> run;
};

const std::vector<ParamSpec>& parameter_table();
/// Throws ConfigError for unknown names.
const ParamSpec& parameter(std::string_view name);

const std::vector<ExperimentSpec>& experiments();
/// Throws ConfigError for unknown names.
const ExperimentSpec& experiment(std::string_view name);

ParamSet default_params(const ExperimentSpec& spec);

/// Finite values; integer parameters integral; only parameters the experiment takes.
void validate_params(const ExperimentSpec& spec, const ParamSet& params);

}  // namespace specmodes::cli
