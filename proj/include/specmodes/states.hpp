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
#include <vector>

#include "specmodes/joint_sdf.hpp"

namespace specmodes {

struct NormalizationOptions {
  /// Largest photon count allowed in any one spatial mode.
  int max_photons_per_mode = 5;
  /// Tolerance on |N - prod n_i!| for the symmetry verdict.
  double symmetry_tol = 1e-6;
  /// Tolerance on the separable norm precondition.
  double norm_tol = 1e-9;
};

struct NormalizationReport {
  double value = 0.0;
  int photon_count = 0;
  std::vector<int> partition;
  /// prod_i n_i!, the largest value the factor can take.
  double maximum = 1.0;
  bool fully_symmetric = false;
  /// |Im| of the permutation sum; should be rounding noise.
  double imaginary_residue = 0.0;

  /// value / maximum, in [1 / maximum, 1].
  double symmetry_ratio() const { return value / maximum; }
};

/// Permutation-sum normalization factor of a separably normalized joint SDF:
/// sum over per-mode axis permutations P of <psi, psi o P>.
NormalizationReport normalization_factor(const JointSDF& sdf, const NormalizationOptions& options = {});

/// Same permutation sum for a product-form SDF f_1(w_1)...f_n(w_n), evaluated
/// from the pairwise overlaps <f_a, f_b> without building the tensor. Each
/// factor must be normalized.
double product_normalization_factor(std::span<const SpectralFunction> factors,
                                    std::span<const int> partition = {},
                                    const NormalizationOptions& options = {});

struct SymmetryVerdict {
  bool symmetric = false;
  /// max over adjacent transpositions of ||psi - psi o P||.
  double max_deviation = 0.0;
};

/// Adjacent transpositions inside each spatial mode generate the full
/// symmetry group, so checking them suffices.
SymmetryVerdict is_fully_symmetric(const JointSDF& sdf, double tol = 1e-6);

/// Average over per-mode permutations, renormalized to unit separable norm.
JointSDF symmetrize(const JointSDF& sdf, const NormalizationOptions& options = {});

/// Unnormalized average (1/|G|) sum_P psi o P over the per-mode permutation group.
Eigen::VectorXcd symmetric_part(const JointSDF& sdf, const NormalizationOptions& options = {});

struct FockVerdict {
  bool is_fock = false;
  /// ||psi/|psi| - phi^{(x)n}|| for the best phase-aligned factor.
  double residual = 0.0;
  /// Extracted single-photon factor, normalized; phase chosen so that
  /// <phi^{(x)n}, psi> is real and positive.
  SpectralFunction factor;
};

/// Tests whether a single-mode SDF factorizes as phi(w_1)...phi(w_n).
FockVerdict is_fock_state(const JointSDF& sdf, double tol = 1e-6);

struct FockFactor {
  Eigen::VectorXcd factor;  // unit Euclidean norm in the given coordinates
  double residual = 0.0;
};

/// Core of the Fock criterion on raw coordinates: `tensor` has `rank` axes of
/// length `dim` and the coordinates are orthonormal (plain Euclidean norm).
/// Used both on grid samples and on eigenmode coefficient tensors.
FockFactor extract_fock_factor(const Eigen::VectorXcd& tensor, std::size_t dim, int rank);

}  // namespace specmodes
