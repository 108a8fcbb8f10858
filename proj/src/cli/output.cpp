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

#include "specmodes/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "specmodes/errors.hpp"

namespace specmodes::cli {
namespace {

constexpr double kTol = 1e-9;

// Report fields that hold probabilities wherever they appear.
const std::set<std::string>& probability_fields() {
  static const std::set<std::string> fields{
      "gamma",   "p_c",      "p_c_simulated",   "p_c_continuum",     "p_4a",     "p_4a_closed",
      "p_4a_permutation", "probability", "purity", "ensemble_purity", "fidelity", "vacuum_population",
      "trace_fraction"};
  return fields;
}

void check_probability(const std::string& name, double v) {
  if (!(v >= -kTol && v <= 1.0 + kTol)) {
    std::ostringstream msg;
    msg << "refusing to write '" << name << "' = " << v << ": not a probability";
    throw NumericalError(msg.str());
  }
}

void check_density(const Report& dm) {
  const auto d = dm.at("dimension").get<std::size_t>();
  const Report& data = dm.at("data");
  if (data.size() != d * d) throw NumericalError("density matrix payload has the wrong size");
  auto at = [&](std::size_t i, std::size_t j) {
    const Report& e = data[i * d + j];
    return complex(e[0].get<double>(), e[1].get<double>());
  };
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    trace += at(i, i).real();
    check_probability("density diagonal", at(i, i).real());
    for (std::size_t j = 0; j < d; ++j) {
      if (std::abs(at(i, j) - std::conj(at(j, i))) > kTol) {
        throw NumericalError("refusing to write a density matrix that is not Hermitian");
      }
    }
  }
  if (std::abs(trace - 1.0) > kTol) throw NumericalError("refusing to write a density matrix without unit trace");
}

void walk(const std::string& name, const Report& node) {
  if (node.is_object()) {
    if (name == "density_matrix") {
      check_density(node);
      return;
    }
    for (const auto& [key, child] : node.items()) walk(key, child);
  } else if (node.is_array()) {
    for (const auto& child : node) walk(name == "diagonal" ? "diagonal" : std::string(), child);
  } else if (node.is_number()) {
    const double v = node.get<double>();
    if (!std::isfinite(v)) throw NumericalError("refusing to write non-finite field '" + name + "'");
    if (probability_fields().count(name) || name == "diagonal") check_probability(name, v);
  }
}

std::string cell(const Report& value) {
  if (value.is_boolean()) return value.get<bool>() ? "1" : "0";
  if (value.is_number()) return format_number(value.get<double>());
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return std::string(buf.data(), ptr);
}

Report complex_json(complex value) { return Report::array({value.real(), value.imag()}); }

Report density_json(const DensityOperator& rho) {
  Report out;
  const std::size_t d = rho.dimension();
  out["dimension"] = d;
  Report data = Report::array();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) data.push_back(complex_json(rho(i, j)));
  }
  out["data"] = data;
  return out;
}

Report state_json(const OccupationState& state) {
  Report out;
  Report slots = Report::array();
  for (const auto& slot : state.slots()) slots.push_back(slot.mode + std::to_string(slot.eigenmode));
  out["slots"] = slots;
  Report amps = Report::array();
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (std::abs(amp) < 1e-15) continue;
    Report row;
    row["occupation"] = occ;
    row["amplitude"] = complex_json(amp);
    amps.push_back(row);
  }
  out["amplitudes"] = amps;
  return out;
}

void validate_report(const Report& report) { walk(std::string(), report); }

std::string to_csv(const ExperimentSpec& spec, const std::optional<SweepSpec>& sweep,
                   const std::vector<Report>& rows) {
  std::ostringstream out;
  std::vector<std::string> header;
  if (sweep) header.push_back(sweep->parameter);
  for (const auto& column : spec.csv_columns) {
    if (sweep && column == sweep->parameter) continue;
    if (!rows.empty() && rows.front().contains(column) && rows.front()[column].is_array()) {
      for (std::size_t i = 0; i < rows.front()[column].size(); ++i) header.push_back(column + "_" + std::to_string(i));
    } else {
      header.push_back(column);
    }
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    if (sweep) cells.push_back(format_number(row.at("parameters").at(sweep->parameter).get<double>()));
    for (const auto& column : spec.csv_columns) {
      if (sweep && column == sweep->parameter) continue;
      const Report& value = row.at(column);
      if (value.is_array()) {
        for (const auto& v : value) cells.push_back(cell(v));
      } else {
        cells.push_back(cell(value));
      }
    }
    if (cells.size() != header.size()) throw NumericalError("sweep rows disagree on the number of columns");
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<Report>& reports, bool sweep) {
  if (!sweep && reports.size() == 1) return reports.front().dump(2) + "\n";
  Report arr = Report::array();
  for (const auto& r : reports) arr.push_back(r);
  return arr.dump(2) + "\n";
}

}  // namespace specmodes::cli
