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

#include "specmodes/cli/app.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "specmodes/cli/output.hpp"
#include "specmodes/errors.hpp"

namespace specmodes::cli {
namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UsageError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e)) {
    return kExitConfig;
  }
  if (dynamic_cast<const ResourceError*>(&e) || dynamic_cast<const TruncationError*>(&e) ||
      dynamic_cast<const NumericalError*>(&e)) {
    return kExitNumerical;
  }
  return kExitInternal;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

std::string default_output_path(const RunConfig& config) {
  const char* dir = std::getenv("SPECMODES_OUT_DIR");
  if (!dir || !*dir) return {};
  const char* ext = config.resolved_format() == Format::Csv ? ".csv" : ".json";
  return (std::filesystem::path(dir) / (config.experiment + ext)).string();
}

}  // namespace

std::vector<Report> evaluate(const RunConfig& config) {
  config.validate();
  const ExperimentSpec& spec = experiment(config.experiment);
  std::vector<ParamSet> points;
  if (config.sweep) {
    for (double v : config.sweep->values()) {
      ParamSet p = config.params;
      p[config.sweep->parameter] = v;
      points.push_back(std::move(p));
    }
  } else {
    points.push_back(config.params);
  }

  std::vector<Report> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = spec.run(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = worker_count(config.jobs, points.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Report the first failure in sweep order so errors are deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<Report> reports = evaluate(config);
    for (const auto& r : reports) validate_report(r);
    const ExperimentSpec& spec = experiment(config.experiment);
    const std::string payload = config.resolved_format() == Format::Csv
                                    ? to_csv(spec, config.sweep, reports)
                                    : to_json(reports, config.sweep.has_value());
    const std::string path = config.output_path.empty() ? default_output_path(config) : config.output_path;
    if (path.empty()) {
      out << payload;
      return kExitOk;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + path + "' for writing");
    file << payload;
    file.flush();
    if (!file) throw ConfigError("failed writing output file '" + path + "'");
    return kExitOk;
  } catch (const std::exception& e) {
    err << "specmodes: error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral mode decomposition of multiphoton states: experiments and sweeps"};
  app.set_version_flag("--version", "specmodes 0.1.0");
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_path;
  std::string format_text = "auto";
  unsigned jobs = 0;
  std::string sweep_text;
  app.add_option("--config", config_path, "JSON config file (comments allowed)");
  app.add_option("--out", out_path, "output file (default: $SPECMODES_OUT_DIR/<experiment>.<ext>, else stdout)");
  app.add_option("--format", format_text, "csv | json (default: csv for sweeps, json otherwise)")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--jobs", jobs, "sweep worker threads (default: hardware threads)")->check(CLI::PositiveNumber);
  app.add_option("--sweep", sweep_text, "sweep one parameter: name=start:stop:steps");

  std::map<std::string, double> overrides;
  std::string shortcut_sweep;
  std::string shortcut_param;
  for (const auto& spec : experiments()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->fallthrough();
    for (const auto& name : spec.params) {
      const ParamSpec& param = parameter(name);
      sub->add_option_function<double>(
             "--" + name, [&overrides, name](double v) { overrides[name] = v; }, param.help)
          ->default_str(format_number(param.default_value));
    }
    for (const char* shortcut : {"delay", "gamma"}) {
      if (std::find(spec.params.begin(), spec.params.end(), shortcut) == spec.params.end()) continue;
      const std::string param_name = shortcut;
      sub->add_option_function<std::string>(
          "--" + param_name + "-sweep",
          [&shortcut_sweep, &shortcut_param, param_name](const std::string& v) {
            shortcut_sweep = v;
            shortcut_param = param_name;
          },
          "sweep " + param_name + " over start:stop:steps");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config;
    ConfigFile file;
    if (!config_path.empty()) file = load_config_file(config_path);

    std::string name;
    for (const auto* sub : app.get_subcommands()) name = sub->get_name();
    if (name.empty()) {
      if (!file.experiment) throw UsageError("no experiment given; pick a subcommand or set 'experiment' in the config");
      name = *file.experiment;
    } else if (file.experiment && *file.experiment != name) {
      throw ConfigError("config experiment '" + *file.experiment + "' conflicts with subcommand '" + name + "'");
    }
    const ExperimentSpec& spec = experiment(name);
    config.experiment = spec.name;

    if (file.degenerate) {
      if (spec.name == "kitten" && !*file.degenerate) throw ConfigError("kitten preparation needs a degenerate source");
      if (spec.name == "cond-fock" && *file.degenerate) {
        throw ConfigError("conditional Fock preparation needs a non-degenerate source");
      }
      if (spec.name != "kitten" && spec.name != "cond-fock") {
        throw ConfigError("source.degenerate applies only to kitten and cond-fock");
      }
    }

    config.params = default_params(spec);
    for (const auto& [k, v] : file.params) {
      if (!config.params.count(k)) throw ConfigError("experiment '" + spec.name + "' takes no parameter '" + k + "'");
      config.params[k] = v;
    }
    for (const auto& [k, v] : overrides) config.params[k] = v;

    if (!sweep_text.empty() && !shortcut_sweep.empty()) throw UsageError("give at most one sweep");
    if (!sweep_text.empty()) {
      config.sweep = parse_sweep(sweep_text);
    } else if (!shortcut_sweep.empty()) {
      config.sweep = parse_sweep(shortcut_sweep, shortcut_param);
    } else {
      config.sweep = file.sweep;
    }
    config.output_path = !out_path.empty() ? out_path : file.output_path.value_or("");
    config.format = format_text != "auto" ? parse_format(format_text) : file.format.value_or(Format::Auto);
    config.jobs = jobs ? jobs : file.jobs.value_or(0);
    return execute(config, out, err);
  } catch (const std::exception& e) {
    err << "specmodes: error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace specmodes::cli
