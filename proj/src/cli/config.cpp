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

#include "specmodes/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specmodes/errors.hpp"

namespace specmodes::cli {
namespace {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError("malformed number '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

double number_field(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError("config field '" + key + "' must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw ConfigError("config field '" + key + "' must be finite");
  return v;
}

void require_object(const nlohmann::json& value, const std::string& key) {
  if (!value.is_object()) throw ConfigError("config section '" + key + "' must be an object");
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    // Endpoints are exact; interior points use the same formula in every run.
    out.push_back(i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1));
  }
  return out;
}

SweepSpec parse_sweep(std::string_view text, std::string_view parameter) {
  SweepSpec out;
  std::string_view range = text;
  if (parameter.empty()) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("sweep must look like name=start:stop:steps");
    }
    out.parameter = std::string(text.substr(0, eq));
    range = text.substr(eq + 1);
  } else {
    out.parameter = std::string(parameter);
  }
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw ConfigError("sweep range must look like start:stop:steps");
  }
  out.start = parse_double(range.substr(0, c1), "sweep start");
  out.stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), "sweep stop");
  const double steps = parse_double(range.substr(c2 + 1), "sweep steps");
  if (steps < 1 || steps != std::round(steps) || steps > 1e6) {
    throw ConfigError("sweep steps must be a positive integer");
  }
  out.steps = static_cast<int>(steps);
  return out;
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "auto") return Format::Auto;
  throw ConfigError("output format must be csv or json");
}

void RunConfig::validate() const {
  const ExperimentSpec& spec = cli::experiment(experiment);
  validate_params(spec, params);
  if (sweep) {
    if (sweep->steps < 1) throw ConfigError("sweep steps must be at least 1");
    if (!std::isfinite(sweep->start) || !std::isfinite(sweep->stop)) {
      throw ConfigError("sweep bounds must be finite");
    }
    if (std::find(spec.params.begin(), spec.params.end(), sweep->parameter) == spec.params.end()) {
      throw ConfigError("experiment '" + spec.name + "' cannot sweep '" + sweep->parameter + "'");
    }
    if (parameter(sweep->parameter).integer) {
      for (double v : sweep->values()) {
        if (v != std::round(v)) throw ConfigError("sweep of integer parameter '" + sweep->parameter + "' hits " + std::to_string(v));
      }
    }
  }
}

Format RunConfig::resolved_format() const {
  if (format != Format::Auto) return format;
  return sweep ? Format::Csv : Format::Json;
}

ConfigFile parse_config(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  ConfigFile out;
  auto take_params = [&](const nlohmann::json& section, const std::string& name) {
    require_object(section, name);
    for (const auto& [key, value] : section.items()) {
      parameter(key);  // rejects unknown names
      out.params[key] = number_field(value, name + "." + key);
    }
  };

  for (const auto& [key, value] : root.items()) {
    if (key == "experiment") {
      if (!value.is_string()) throw ConfigError("config field 'experiment' must be a string");
      out.experiment = value.get<std::string>();
    } else if (key == "grid" || key == "parameters") {
      take_params(value, key);
    } else if (key == "pulse") {
      require_object(value, key);
      nlohmann::json rest = value;
      if (rest.contains("shape")) {
        if (rest["shape"] != "gaussian") throw ConfigError("pulse.shape must be \"gaussian\"");
        rest.erase("shape");
      }
      take_params(rest, key);
    } else if (key == "source") {
      require_object(value, key);
      nlohmann::json rest = value;
      if (rest.contains("degenerate")) {
        if (!rest["degenerate"].is_boolean()) throw ConfigError("source.degenerate must be a boolean");
        out.degenerate = rest["degenerate"].get<bool>();
        rest.erase("degenerate");
      }
      take_params(rest, key);
    } else if (key == "sweep") {
      require_object(value, key);
      for (const char* field : {"parameter", "start", "stop", "steps"}) {
        if (!value.contains(field)) throw ConfigError(std::string("sweep section needs '") + field + "'");
      }
      if (!value["parameter"].is_string()) throw ConfigError("sweep.parameter must be a string");
      SweepSpec sweep;
      sweep.parameter = value["parameter"].get<std::string>();
      sweep.start = number_field(value["start"], "sweep.start");
      sweep.stop = number_field(value["stop"], "sweep.stop");
      const double steps = number_field(value["steps"], "sweep.steps");
      if (steps < 1 || steps != std::round(steps)) throw ConfigError("sweep.steps must be a positive integer");
      sweep.steps = static_cast<int>(steps);
      out.sweep = sweep;
    } else if (key == "output") {
      require_object(value, key);
      for (const auto& [field, v] : value.items()) {
        if (!v.is_string()) throw ConfigError("output." + field + " must be a string");
        if (field == "path") {
          out.output_path = v.get<std::string>();
        } else if (field == "format") {
          out.format = parse_format(v.get<std::string>());
        } else {
          throw ConfigError("unknown output field '" + field + "'");
        }
      }
    } else if (key == "jobs") {
      const double jobs = number_field(value, key);
      if (jobs < 1 || jobs != std::round(jobs)) throw ConfigError("jobs must be a positive integer");
      out.jobs = static_cast<unsigned>(jobs);
    } else {
      throw ConfigError("unknown config section '" + key + "'");
    }
  }
  return out;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace specmodes::cli
