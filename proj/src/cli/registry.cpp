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

#include "specmodes/cli/registry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specmodes/cli/output.hpp"
#include "specmodes/specmodes.hpp"

namespace specmodes::cli {
namespace {

int as_int(const ParamSet& p, const std::string& name) { return static_cast<int>(std::lround(p.at(name))); }

double factorial(int n) { return std::tgamma(n + 1.0); }

FrequencyGrid grid_of(const ParamSet& p) {
  const int points = as_int(p, "points");
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  return FrequencyGrid(p.at("omega_min"), p.at("omega_max"), static_cast<std::size_t>(points));
}

SpectralFunction pulse_of(const FrequencyGrid& grid, const ParamSet& p, double delay = 0.0) {
  return gaussian_pulse(grid, p.at("center"), p.at("width"), delay);
}

EigenBasis indicator_basis(const FrequencyGrid& grid) {
  return EigenBasis(grid, FillerFamily::grid_indicators().members(grid, grid.points()));
}

std::size_t basis_size_of(const ParamSet& p) {
  const int size = as_int(p, "basis_size");
  if (size < 1) throw ConfigError("basis_size must be at least 1");
  return static_cast<std::size_t>(size);
}

// Product of `photons` Gaussians, photon k delayed by k * delay.
std::vector<SpectralFunction> delayed_train(const FrequencyGrid& grid, const ParamSet& p) {
  const int photons = as_int(p, "photons");
  if (photons < 1) throw ConfigError("photons must be at least 1");
  std::vector<SpectralFunction> out;
  for (int k = 0; k < photons; ++k) out.push_back(pulse_of(grid, p, k * p.at("delay")));
  return out;
}

// Detector mode for heralded runs: a top-hat of the given width, or the
// principal marginal mode when the width is zero.
SpectralFunction detector_of(const FrequencyGrid& grid, const JointSDF& joint, const ParamSet& p) {
  const double w = p.at("detector_width");
  if (w < 0.0) throw ConfigError("detector_width must be nonnegative");
  if (w == 0.0) return principal_marginal_mode(joint, indicator_basis(grid));
  const double c = p.at("center");
  return rect_window(grid, c - 0.5 * w, c + 0.5 * w);
}

Report run_hom(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const double tau = p.at("delay");
  const HOMResult r = hom_separable(pulse_of(grid, p), pulse_of(grid, p, tau));
  const double sigma = p.at("width");
  Report out;
  out["delay"] = tau;
  out["gamma"] = r.gamma;
  out["p_c"] = r.p_c;
  out["p_c_simulated"] = r.p_c_simulated;
  out["p_c_continuum"] = 0.5 * (1.0 - std::exp(-sigma * sigma * tau * tau));
  return out;
}

Report run_hom_entangled(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const JointSDF joint = gaussian_biphoton(grid, p.at("center"), p.at("width"), p.at("correlation"), p.at("offset"));
  const HOMResult r = hom_entangled(joint, indicator_basis(grid));
  Report out;
  out["p_c"] = r.p_c;
  out["p_c_simulated"] = r.p_c_simulated;
  out["captured_norm"] = r.captured_norm;
  const auto d = static_cast<Eigen::Index>(grid.points());
  const Eigen::Map<const Eigen::MatrixXcd> psi(joint.tensor().data(), d, d);
  out["exchange_asymmetry"] = (psi - psi.transpose()).norm() / psi.norm();
  return out;
}

Report run_four_photon(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const auto [phi1, phi2] = pair_with_overlap(grid, p.at("center"), p.at("width"), p.at("gamma"));
  const FourPhotonResult r = four_photon_interference(phi1, phi2);
  Report out;
  out["gamma"] = r.gamma;
  out["p_4a"] = r.p_4a;
  out["p_4a_permutation"] = r.p_4a_permutation;
  out["p_4a_closed"] = r.p_4a_closed;
  out["n2"] = r.n2;
  out["n4"] = r.n4;
  out["n4_closed"] = r.n4_closed;
  return out;
}

Report run_filter(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const int n = as_int(p, "photons");
  if (n < 1) throw ConfigError("photons must be at least 1");
  const auto [filter, pulse] = pair_with_overlap(grid, p.at("center"), p.at("width"), p.at("gamma"));
  const std::vector<SpectralFunction> factors(static_cast<std::size_t>(n), pulse);
  const DensityOperator rho = spectral_filter(tensor_product_sdf(factors), filter);
  Report out;
  out["gamma"] = overlap_gamma(filter, pulse);
  out["trace"] = rho.trace();
  Report diag = Report::array();
  for (double v : rho.diagonal()) diag.push_back(v);
  out["diagonal"] = diag;
  out["density_matrix"] = density_json(rho);
  return out;
}

Report run_homodyne(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const int top = as_int(p, "photons");
  if (top < 0) throw ConfigError("photons must be nonnegative");
  const double alpha = p.at("alpha");
  std::vector<complex> weights;
  double norm = 0.0;
  double term = 1.0;
  for (int n = 0; n <= top; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    weights.emplace_back(term);
    norm += term * term;
  }
  for (auto& c : weights) c /= std::sqrt(norm);
  const auto [probe, pulse] = pair_with_overlap(grid, p.at("center"), p.at("width"), p.at("gamma"));
  const DensityOperator rho = homodyne_observe(weights, pulse, probe);
  Eigen::VectorXcd input(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t n = 0; n < weights.size(); ++n) input[static_cast<Eigen::Index>(n)] = weights[n];
  Report out;
  out["gamma"] = overlap_gamma(probe, pulse);
  out["fidelity"] = std::clamp(rho.fidelity(input), 0.0, 1.0);
  out["purity"] = std::clamp(rho.purity(), 0.0, 1.0);
  out["vacuum_population"] = std::real(rho(0, 0));
  out["density_matrix"] = density_json(rho);
  return out;
}

Report heralded_common(const ConditionedPreparationResult& r) {
  Report out;
  out["success"] = r.success;
  out["probability"] = r.probability;
  out["purity"] = std::clamp(r.purity, 0.0, 1.0);
  out["ensemble_purity"] = std::clamp(r.ensemble_purity, 0.0, 1.0);
  out["fock_verdict"] = r.fock_verdict;
  out["fock_residual"] = r.fock_residual;
  out["truncation_error"] = r.truncation_error;
  return out;
}

Report run_kitten(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const JointSDF joint = gaussian_biphoton(grid, p.at("center"), p.at("width"), p.at("correlation"));
  const SpectralFunction detector = detector_of(grid, joint, p);
  const EigenBasis basis = schmidt_basis(joint, detector, basis_size_of(p));
  const PDCSource source{p.at("coupling"), joint, true, as_int(p, "n_max")};
  KittenOptions options;
  options.reflectivity = p.at("reflectivity");
  const ConditionedPreparationResult r = kitten_preparation(source, basis, options);
  Report out = heralded_common(r);
  out["schmidt_number"] = schmidt_decompose(joint).schmidt_number();
  out["vacuum_mixing_fraction"] = r.vacuum_mixing_fraction;
  out["leading_order_fidelity"] = r.leading_order_fidelity;
  if (r.observed) out["density_matrix"] = density_json(*r.observed);
  return out;
}

Report run_cond_fock(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const JointSDF joint = gaussian_biphoton(grid, p.at("center"), p.at("width"), p.at("correlation"));
  const SpectralFunction detector = detector_of(grid, joint, p);
  const EigenBasis basis = schmidt_basis(joint, detector, basis_size_of(p));
  const PDCSource source{p.at("coupling"), joint, false, as_int(p, "n_max")};
  const ConditionedPreparationResult r = conditional_fock(source, as_int(p, "m"), basis);
  Report out = heralded_common(r);
  out["m"] = as_int(p, "m");
  out["mode_error"] = r.mode_error;
  out["neglected_fraction"] = r.neglected_fraction;
  if (r.state) out["state"] = state_json(*r.state);
  return out;
}

Report run_normalization(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const auto factors = delayed_train(grid, p);
  const int n = static_cast<int>(factors.size());
  Report out;
  out["photons"] = n;
  const double dense_size = std::pow(static_cast<double>(grid.points()), n);
  double value = 0.0;
  if (dense_size <= 1 << 20) {
    const NormalizationReport r = normalization_factor(tensor_product_sdf(factors));
    value = r.value;
    out["route"] = "dense";
    out["fully_symmetric"] = r.fully_symmetric;
  } else {
    value = product_normalization_factor(factors);
    out["route"] = "permanent";
  }
  out["value"] = value;
  out["maximum"] = factorial(n);
  out["ratio"] = value / factorial(n);
  return out;
}

Report run_decompose(const ParamSet& p) {
  const FrequencyGrid grid = grid_of(p);
  const auto factors = delayed_train(grid, p);
  const EigenBasis basis = basis_containing(pulse_of(grid, p), FillerFamily::matched_to_pulse(p.at("center"), p.at("width")),
                                            basis_size_of(p));
  const ModeDecomposition dec = decompose(tensor_product_sdf(factors), basis);
  Report out;
  out["photons"] = dec.photon_count();
  out["residual"] = dec.residual();
  out["occupation_norm"] = dec.occupation_norm();
  Report table = Report::array();
  const auto occ = dec.occupation_amplitudes();
  for (const auto& [key, lambda] : dec.coefficients()) {
    Report row;
    row["key"] = key;
    const OccupationVector o = dec.occupation(key);
    row["occupation"] = o;
    row["lambda"] = complex_json(lambda);
    row["amplitude"] = complex_json(occ.at(o));
    table.push_back(row);
  }
  out["coefficients"] = table;
  return out;
}

const std::vector<std::string> kGrid{"omega_min", "omega_max", "points"};

std::vector<std::string> with_grid(std::vector<std::string> rest) {
  std::vector<std::string> out = kGrid;
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

ExperimentSpec make(std::string name, std::string description, std::vector<std::string> params,
                    std::vector<std::string> columns, Report (*fn)(const ParamSet&)) {
  ExperimentSpec spec{std::move(name), std::move(description), with_grid(std::move(params)), std::move(columns), {}};
  spec.run = [fn, spec_name = spec.name, spec_params = spec.params](const ParamSet& p) {
    Report out;
    out["experiment"] = spec_name;
    Report params = Report::object();
    for (const auto& n : spec_params) {
      if (parameter(n).integer) {
        params[n] = as_int(p, n);
      } else {
        params[n] = p.at(n);
      }
    }
    out["parameters"] = params;
    out.update(fn(p));
    return out;
  };
  return spec;
}

}  // namespace

const std::vector<ParamSpec>& parameter_table() {
  static const std::vector<ParamSpec> table{
      {"omega_min", -8.0, "lower edge of the frequency grid"},
      {"omega_max", 8.0, "upper edge of the frequency grid"},
      {"points", 64, "number of grid nodes", true},
      {"center", 0.0, "pulse center frequency"},
      {"width", 1.0, "pulse intensity width sigma"},
      {"delay", 0.0, "time delay (per photon for normalization/decompose)"},
      {"gamma", 0.5, "target overlap |<phi1, phi2>|^2"},
      {"correlation", -0.6, "biphoton frequency correlation in (-1, 1)"},
      {"offset", 0.0, "center separation between the two photons of a biphoton"},
      {"coupling", 0.1, "down-conversion coupling strength"},
      {"n_max", 3, "pair truncation of the down-conversion expansion", true},
      {"basis_size", 8, "number of eigenmodes", true},
      {"reflectivity", 0.05, "tap beamsplitter reflectivity eta"},
      {"detector_width", 0.5, "top-hat detector width (0: principal marginal mode)"},
      {"m", 2, "heralded photon number", true},
      {"photons", 3, "photon number", true},
      {"alpha", 0.5, "amplitude of the truncated coherent superposition"},
  };
  return table;
}

const ParamSpec& parameter(std::string_view name) {
  for (const auto& spec : parameter_table()) {
    if (spec.name == name) return spec;
  }
  throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

const std::vector<ExperimentSpec>& experiments() {
  static const std::vector<ExperimentSpec> table{
      make("hom", "two-photon interference of delayed Gaussian pulses", {"center", "width", "delay"},
           {"gamma", "p_c"}, run_hom),
      make("hom-entangled", "two-photon interference of a Gaussian biphoton",
           {"center", "width", "correlation", "offset"}, {"p_c", "p_c_simulated"}, run_hom_entangled),
      make("four-photon", "two photon pairs on a 50/50 beamsplitter, four photons in A",
           {"center", "width", "gamma"}, {"p_4a", "p_4a_closed", "n2", "n4"}, run_four_photon),
      make("filter", "n-photon Fock state behind an ideal spectral filter", {"center", "width", "gamma", "photons"},
           {"trace", "diagonal"}, run_filter),
      make("homodyne", "Fock superposition observed by a mode-mismatched homodyne probe",
           {"center", "width", "gamma", "photons", "alpha"}, {"fidelity", "purity", "vacuum_population"},
           run_homodyne),
      make("kitten", "photon subtraction from a degenerate down-conversion source",
           {"center", "width", "correlation", "coupling", "n_max", "basis_size", "reflectivity", "detector_width"},
           {"probability", "purity", "vacuum_mixing_fraction"}, run_kitten),
      make("cond-fock", "heralded Fock state from a non-degenerate down-conversion source",
           {"center", "width", "correlation", "coupling", "n_max", "basis_size", "detector_width", "m"},
           {"probability", "purity", "fock_residual", "mode_error", "neglected_fraction"}, run_cond_fock),
      make("normalization", "permutation-sum normalization of a delayed photon train",
           {"center", "width", "delay", "photons"}, {"value", "ratio"}, run_normalization),
      make("decompose", "eigenmode coefficients of a delayed photon train",
           {"center", "width", "delay", "photons", "basis_size"}, {"residual", "occupation_norm"}, run_decompose),
  };
  return table;
}

const ExperimentSpec& experiment(std::string_view name) {
  for (const auto& spec : experiments()) {
    if (spec.name == name) return spec;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ParamSet default_params(const ExperimentSpec& spec) {
  ParamSet out;
  for (const auto& name : spec.params) out[name] = parameter(name).default_value;
  return out;
}

void validate_params(const ExperimentSpec& spec, const ParamSet& params) {
  for (const auto& [name, value] : params) {
    if (std::find(spec.params.begin(), spec.params.end(), name) == spec.params.end()) {
      throw ConfigError("experiment '" + spec.name + "' takes no parameter '" + name + "'");
    }
    if (!std::isfinite(value)) throw ConfigError("parameter '" + name + "' must be finite");
    if (parameter(name).integer && value != std::round(value)) {
      throw ConfigError("parameter '" + name + "' must be an integer");
    }
  }
  for (const auto& name : spec.params) {
    if (!params.count(name)) throw ConfigError("missing parameter '" + name + "'");
  }
}

}  // namespace specmodes::cli
