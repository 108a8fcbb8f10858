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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "specmodes/joint_sdf.hpp"
#include "specmodes/spectral.hpp"

namespace specmodes {

/// Ordered orthonormal set of spectral functions on one grid.
class EigenBasis {
 public:
  /// Validates pairwise orthonormality to `tol`.
  EigenBasis(FrequencyGrid grid, std::vector<SpectralFunction> functions, double tol = 1e-9);

  const FrequencyGrid& grid() const { return grid_; }
  std::size_t size() const { return functions_.size(); }
  const std::vector<SpectralFunction>& functions() const { return functions_; }
  const SpectralFunction& operator[](std::size_t i) const { return functions_[i]; }

  /// Grid samples as columns (points x size).
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Coefficients <xi_i, f> of a single-photon function.
  Eigen::VectorXcd coefficients(const SpectralFunction& f) const;
  /// sum_i c_i xi_i.
  SpectralFunction synthesize(const Eigen::VectorXcd& coefficients) const;

  double orthonormality_error() const;

 private:
  FrequencyGrid grid_;
  std::vector<SpectralFunction> functions_;
  Eigen::MatrixXcd matrix_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Seeds whose
/// residual norm, relative to the seed norm, falls below `tol` are dropped.
/// Output functions keep the phase of the seed they came from.
EigenBasis gram_schmidt(std::span<const SpectralFunction> seeds, double tol = 1e-10);

/// Generator for the functions that complete a basis around a given one.
struct FillerFamily {
  enum class Kind { HermiteGauss, GridIndicators };
  Kind kind = Kind::HermiteGauss;
  double center = 0.0;
  double scale = 1.0;

  static FillerFamily hermite_gauss(double center, double scale) {
    return {Kind::HermiteGauss, center, scale};
  }
  /// Hermite-Gauss family whose order-0 member is gaussian_pulse(center, width).
  static FillerFamily matched_to_pulse(double center, double width);
  static FillerFamily grid_indicators() { return {Kind::GridIndicators, 0.0, 1.0}; }

  /// First `count` members (at most the grid size).
  std::vector<SpectralFunction> members(const FrequencyGrid& grid, std::size_t count) const;
};

/// Orthonormal basis of `size` functions whose first element is `f` itself
/// (bit for bit); the rest come from Gram-Schmidt over the filler family.
EigenBasis basis_containing(const SpectralFunction& f, const FillerFamily& filler, std::size_t size);

using MultiIndex = std::vector<int>;
using OccupationVector = std::vector<int>;

/// lambda coefficients of a single-mode n-photon SDF keyed by nondecreasing
/// multi-indices. Each key's coefficient is the sum of the raw projections over
/// every distinct ordering of that key, so the occupation amplitudes
/// lambda' = sqrt(prod m_j!) lambda satisfy sum |lambda'|^2 = <psi|psi>.
class ModeDecomposition {
 public:
  ModeDecomposition(EigenBasis basis, int photon_count, std::map<MultiIndex, complex> coefficients,
                    double residual = 0.0);

  /// Zero-photon decomposition holding the vacuum with amplitude 1.
  static ModeDecomposition vacuum(EigenBasis basis);

  const EigenBasis& basis() const { return basis_; }
  int photon_count() const { return photon_count_; }
  const std::map<MultiIndex, complex>& coefficients() const { return coefficients_; }
  /// ||symmetric part of psi - reconstruction|| relative to ||psi||.
  double residual() const { return residual_; }

  OccupationVector occupation(const MultiIndex& key) const;
  std::map<OccupationVector, complex> occupation_amplitudes() const;
  /// sum over occupation vectors of |lambda'|^2.
  double occupation_norm() const;

 private:
  EigenBasis basis_;
  int photon_count_;
  std::map<MultiIndex, complex> coefficients_;
  double residual_;
};

struct DecomposeOptions {
  /// Coefficients with |lambda| at or below this are omitted from the map.
  double drop_tol = 1e-12;
  /// A residual above this triggers an incomplete-basis warning.
  double residual_warn = 1e-6;
};

/// Raw projections <xi_i1 (x) ... (x) xi_in, psi> for every ordered index
/// tuple, as a row-major tensor with axes of length basis.size().
Eigen::VectorXcd project_onto_basis(const JointSDF& sdf, const EigenBasis& basis);

/// Two-photon projection as a matrix lambda(i, j); any partition.
Eigen::MatrixXcd lambda_matrix(const JointSDF& sdf, const EigenBasis& basis);

ModeDecomposition decompose(const JointSDF& sdf, const EigenBasis& basis,
                            const DecomposeOptions& options = {});

/// Symmetric-part reconstruction on the basis grid.
JointSDF reconstruct(const ModeDecomposition& dec);

/// Symmetric coefficient tensor (basis.size()^n) equivalent to the decomposition.
Eigen::VectorXcd symmetric_coefficient_tensor(const ModeDecomposition& dec);

struct TwoModeSplit {
  SpectralFunction desired;
  /// Normalized remainder orthogonal to `desired`; zero when perfect_overlap.
  SpectralFunction rest;
  complex lambda1;
  double lambda0;
  bool perfect_overlap;
};

/// psi = lambda1 * phi + lambda0 * phi_bar with lambda1 = <phi, psi>.
TwoModeSplit two_mode_split(const SpectralFunction& psi, const SpectralFunction& phi,
                            double overlap_tol = 1e-9);

struct SchmidtDecomposition {
  /// Nonnegative, descending.
  std::vector<double> coefficients;
  std::vector<SpectralFunction> modes_a;
  std::vector<SpectralFunction> modes_b;

  /// 1 / sum s_k^4, equal to 1 for a product state.
  double schmidt_number() const;
};

/// SVD of the lambda matrix of a (1,1) biphoton in the given basis (same basis
/// on both sides). Singular values below `drop_tol` are discarded.
SchmidtDecomposition schmidt_decompose(const JointSDF& biphoton, const EigenBasis& basis,
                                       double drop_tol = 1e-12);
/// Schmidt decomposition in the complete grid-indicator basis.
SchmidtDecomposition schmidt_decompose(const JointSDF& biphoton, double drop_tol = 1e-12);

/// Multiplies by the unit phase that makes the first significant amplitude
/// real and positive; returns the phase that was removed.
complex canonical_phase(const Eigen::VectorXcd& v);

}  // namespace specmodes
