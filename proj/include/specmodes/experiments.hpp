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
#include <vector>

#include "specmodes/eigenmode.hpp"
#include "specmodes/joint_sdf.hpp"
#include "specmodes/occupation.hpp"
#include "specmodes/spectral.hpp"

namespace specmodes {

// ---------------------------------------------------------------------------
// Two-photon interference

struct HOMResult {
  double gamma = 0.0;
  /// Coincidence probability from the closed form.
  double p_c = 0.0;
  /// Same quantity from the occupation-state beamsplitter simulation.
  double p_c_simulated = 0.0;
  /// Fraction of the biphoton norm captured by the basis (1 for separable inputs).
  double captured_norm = 1.0;
};

/// Two independent photons, one in each input port.
HOMResult hom_separable(const SpectralFunction& phi, const SpectralFunction& varphi);

/// One photon per port sharing the (1,1) joint SDF `biphoton`.
HOMResult hom_entangled(const JointSDF& biphoton, const EigenBasis& basis);

// ---------------------------------------------------------------------------
// Four-photon interference of two photon pairs

struct FourPhotonResult {
  double gamma = 0.0;
  double n2 = 0.0;
  double n4 = 0.0;
  /// Occupation-state simulation: 50/50 beamsplitter, all four photons in A.
  double p_4a = 0.0;
  /// N4 / (16 N2^2) from the permutation sums.
  double p_4a_permutation = 0.0;
  /// 1/4 (gamma + 1 / (1 + gamma)).
  double p_4a_closed = 0.0;
  /// 4 (1 + gamma + gamma^2).
  double n4_closed = 0.0;
};

FourPhotonResult four_photon_interference(const SpectralFunction& phi1, const SpectralFunction& phi2);

double four_photon_closed_form(double gamma);

/// Pair (phi1, phi2) with |<phi1, phi2>|^2 = gamma: phi1 is a Gaussian pulse
/// and phi2 mixes in the first Hermite-Gauss function orthogonal to it.
std::pair<SpectralFunction, SpectralFunction> pair_with_overlap(const FrequencyGrid& grid, double center,
                                                                double width, double gamma);

// ---------------------------------------------------------------------------
// Parametric down-conversion

struct PDCSource {
  complex coupling{0.1};
  /// (1,1) joint SDF psi(w1, w2) with unit separable norm.
  JointSDF joint;
  /// true: both photons leave in spatial mode "A"; false: signal "A", idler "B".
  bool degenerate = false;
  int n_max = 3;
};

/// Bivariate Gaussian psi ~ exp(-x^T S^-1 x / 4), S = width^2 [[1, c], [c, 1]],
/// x = (w1 - center, w2 - center). Each marginal has intensity width `width`;
/// c < 0 anti-correlates the frequencies. Requires |c| < 1. A nonzero
/// `offset` moves photon 1 to center + offset/2 and photon 2 to center - offset/2,
/// breaking exchange symmetry.
JointSDF gaussian_biphoton(const FrequencyGrid& grid, double center, double width, double correlation,
                           double offset = 0.0);

/// 1 / sqrt(1 - c^2) for the Gaussian above.
double gaussian_schmidt_number(double correlation);

struct PDCState {
  OccupationState state;
  /// lambda_ij of the joint SDF in the basis.
  Eigen::MatrixXcd lambda;
  /// Norm of the first omitted pair term relative to the kept norm.
  double truncation_error = 0.0;
  double captured_norm = 1.0;
};

/// sum_{n <= n_max} coupling^n / n! (sum_ij lambda_ij A_i^dag X_j^dag)^n |0>,
/// normalized, with X = A (degenerate) or B. Slots: A_0..A_{d-1}[, B_0..B_{d-1}].
PDCState pdc_state(const PDCSource& source, const EigenBasis& basis);

/// Dominant eigenvector of the reduced single-photon state on side A of a
/// (1,1) SDF, expressed in `basis`.
SpectralFunction principal_marginal_mode(const JointSDF& joint, const EigenBasis& basis);

/// Basis whose first element is `detector`, completed by Gram-Schmidt over the
/// Schmidt modes of `joint` (both sides, in decreasing weight), padded with
/// Hermite-Gauss functions around the detector, and truncated
/// to `size` functions.
EigenBasis schmidt_basis(const JointSDF& joint, const SpectralFunction& detector, std::size_t size);

// ---------------------------------------------------------------------------
// Heralded preparation

struct ConditionedPreparationResult {
  double probability = 0.0;
  bool success = false;
  /// Pure conditional state (conditional Fock: the low-gain branch).
  std::optional<OccupationState> state;
  /// Homodyne-observed density operator (kitten preparation).
  std::optional<DensityOperator> observed;
  /// Purity of the reported state: observed for kittens, the low-gain branch otherwise.
  double purity = 0.0;
  /// Tr(rho^2) of the full conditional ensemble, every traced slot included.
  double ensemble_purity = 0.0;
  bool fock_verdict = false;
  double fock_residual = 0.0;
  double vacuum_mixing_fraction = 0.0;
  /// Conditional weight outside the branch the analysis keeps.
  double neglected_fraction = 0.0;
  double truncation_error = 0.0;
  /// Extracted single-photon mode (conditional Fock, m >= 1).
  std::optional<SpectralFunction> mode;
  /// Distance between the extracted and expected modes after phase alignment.
  double mode_error = 0.0;
  /// |<approximate|simulated>|^2 for the kitten leading-order expression.
  double leading_order_fidelity = 0.0;
};

struct KittenOptions {
  double reflectivity = 0.05;
  /// Homodyne probe; defaults to the principal marginal mode of the source.
  std::optional<SpectralFunction> probe;
  double fock_tol = 1e-6;
  /// Subtract the p (x) p source baseline from rho_obs[0,0].
  bool subtract_baseline = true;
};

/// Degenerate source, reflectivity eta beamsplitter, one photon detected in
/// basis element 0 of the reflected mode.
ConditionedPreparationResult kitten_preparation(const PDCSource& source, const EigenBasis& basis,
                                                const KittenOptions& options = {});

/// Non-degenerate source, m photons detected in basis element 0 of mode A;
/// reports the mode-B state.
ConditionedPreparationResult conditional_fock(const PDCSource& source, int m, const EigenBasis& basis,
                                              double fock_tol = 1e-6);

}  // namespace specmodes
