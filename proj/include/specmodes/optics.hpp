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
#include <span>
#include <string_view>
#include <vector>

#include "specmodes/eigenmode.hpp"
#include "specmodes/joint_sdf.hpp"
#include "specmodes/occupation.hpp"

namespace specmodes {

/// Applies a -> t a + r b, b -> r a - t b (r = sqrt(1 - t^2)) to the creation
/// operators of every eigenmode shared by the two spatial modes. At t = r =
/// 1/sqrt(2) this is the phase-asymmetric 50/50 convention; the map is its own
/// inverse.
OccupationState beamsplitter(const OccupationState& state, std::string_view mode_a,
                             std::string_view mode_b, double transmissivity);

template <class State>
struct Conditioned {
  double probability = 0.0;
  /// Renormalized conditional state; empty when the outcome has zero probability.
  std::optional<State> state;

  bool success() const { return state.has_value(); }
};

/// Projects onto `count` photons in a spatial mode (summed over eigenmodes).
Conditioned<OccupationState> postselect(const OccupationState& state, std::string_view mode, int count);

/// Projects onto `count` photons in one eigenmode of a spatial mode. The
/// detector sees no other eigenmode, so every slot of that spatial mode is
/// traced out and the result is in general mixed.
Conditioned<OccupationEnsemble> postselect(const OccupationState& state, std::string_view mode,
                                           int eigenmode, int count);

/// State left in the filter mode when an n-photon Fock input passes an ideal
/// filter: binomial mixture of photon numbers in the filter mode.
DensityOperator spectral_filter(const JointSDF& fock_input, const SpectralFunction& filter,
                                double fock_tol = 1e-6);

/// General path: the transmitted density operator of one eigenmode of a
/// spatial mode, every other slot traced out.
DensityOperator spectral_filter(const OccupationState& state, std::string_view mode, int filter_eigenmode);

struct DetectorStatistics {
  std::vector<double> probabilities;  // index m = 0..n

  double total() const;
};

/// P_m = C(n, m) |lambda1|^(2m) (1 - |lambda1|^2)^(n - m).
DetectorStatistics detector_statistics(int n, complex lambda1);

/// sqrt(C(n, i)) lambda1^i lambda0^(n - i): amplitudes of |i>_phi |n-i>_rest
/// for an n-photon Fock state split against a mode phi.
std::vector<complex> fock_split_amplitudes(int n, complex lambda1, double lambda0);

struct HomodyneInput {
  /// Superposition weights c_n, n = 0..N.
  std::vector<complex> weights;
  /// split[n][i]: amplitude of |i>_probe |n-i>_rest inside the n-photon term.
  std::vector<std::vector<complex>> split;
};

/// Density operator seen by a homodyne detector whose probe occupies one
/// mode; the orthogonal remainder is traced out.
DensityOperator homodyne_observe(const HomodyneInput& input);

/// Superposition of Fock states in `pulse` observed with `probe`.
DensityOperator homodyne_observe(std::span<const complex> weights, const SpectralFunction& pulse,
                                 const SpectralFunction& probe);

/// Superposition sum_n c_n |psi_n> with each term given by its eigenmode
/// decomposition; basis element 0 is the probe. Traces every other eigenmode.
DensityOperator homodyne_observe(std::span<const complex> weights,
                                 std::span<const ModeDecomposition> sectors);

/// Occupation state of one spatial mode equivalent to a decomposition.
OccupationState occupation_state(const ModeDecomposition& dec, std::string_view mode,
                                 int truncation = OccupationState::kDefaultTruncation);

/// Symmetric eigenmode-coefficient tensor (d^n) of the n-photon sector of a
/// state whose slots are eigenmodes 0..d-1 of a single spatial mode.
Eigen::VectorXcd sector_tensor(const OccupationState& state, int photons);

}  // namespace specmodes
