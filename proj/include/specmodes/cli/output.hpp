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
#include <vector>

#include "specmodes/cli/config.hpp"
#include "specmodes/cli/registry.hpp"
#include "specmodes/occupation.hpp"

namespace specmodes::cli {

/// Shortest round-trip decimal form with '.' as separator.
std::string format_number(double value);

Report complex_json(complex value);
/// {"dimension": d, "data": [[re, im], ...]} in row-major order.
Report density_json(const DensityOperator& rho);
/// [{"occupation": [...], "amplitude": [re, im]}, ...] grouped by slot labels.
Report state_json(const OccupationState& state);

/// Checks probability-valued fields lie in [0, 1] and density matrices are
/// Hermitian with unit trace, within 1e-9. Throws NumericalError.
void validate_report(const Report& report);

std::string to_csv(const ExperimentSpec& spec, const std::optional<SweepSpec>& sweep,
                   const std::vector<Report>& rows);
std::string to_json(const std::vector<Report>& reports, bool sweep);

}  // namespace specmodes::cli
