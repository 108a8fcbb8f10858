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

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace specmodes {

using complex = std::complex<double>;

/// One (spatial mode, eigenmode) pair.
struct Slot {
  std::string mode;
  int eigenmode = 0;

  auto operator<=>(const Slot&) const = default;
};

/// Slots for `count` eigenmodes of one spatial mode.
std::vector<Slot> mode_slots(std::string_view mode, int count);

using Occupation = std::vector<int>;
using AmplitudeMap = std::map<Occupation, complex>;

/// Pure state in the occupation-number representation: a superposition of
/// occupation vectors over a fixed list of slots.
class OccupationState {
 public:
  static constexpr int kDefaultTruncation = 6;

  /// Vacuum on the given slots.
  explicit OccupationState(std::vector<Slot> slots, int truncation = kDefaultTruncation);
  OccupationState(std::vector<Slot> slots, AmplitudeMap amplitudes, int truncation = kDefaultTruncation);

  const std::vector<Slot>& slots() const { return slots_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  int truncation() const { return truncation_; }

  std::optional<std::size_t> find_slot(std::string_view mode, int eigenmode) const;
  std::size_t slot_index(std::string_view mode, int eigenmode) const;
  std::vector<std::size_t> slots_of_mode(std::string_view mode) const;

  complex amplitude(const Occupation& occ) const;
  double norm_squared() const;
  OccupationState normalized() const;
  int max_total_photons() const;

  /// <this|other>; slot lists must agree.
  complex inner(const OccupationState& other) const;

  OccupationState scaled(complex factor) const;
  OccupationState plus(const OccupationState& other) const;
  /// Drops amplitudes with |a| <= tol.
  OccupationState pruned(double tol = 0.0) const;
  /// Same amplitudes on a longer slot list (extra slots empty).
  OccupationState extended(const std::vector<Slot>& extra_slots) const;

 private:
  std::vector<Slot> slots_;
  AmplitudeMap amplitudes_;
  int truncation_;
};

/// Term of a linear combination of creation operators: coefficient times
/// the creation operator of the indexed slot.
using LinearMode = std::vector<std::pair<std::size_t, complex>>;

/// (sum_s c_s a_s^dagger) |state>. Throws TruncationError when the result
/// would hold more photons than the truncation.
OccupationState apply_creation(const OccupationState& state, const LinearMode& op);

/// (sum c_ij a_i^dagger a_j^dagger) |state> over the listed slot pairs.
using PairOperator = std::vector<std::tuple<std::size_t, std::size_t, complex>>;
OccupationState apply_pair_creation(const OccupationState& state, const PairOperator& op);

/// Mixture of unnormalized pure branches over a common slot list, obtained by
/// tracing out slots of a larger pure state. The branches' squared norms sum to 1.
class OccupationEnsemble {
 public:
  OccupationEnsemble(std::vector<Slot> slots, std::vector<AmplitudeMap> branches, int truncation);
  explicit OccupationEnsemble(const OccupationState& pure);

  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<AmplitudeMap>& branches() const { return branches_; }
  int truncation() const { return truncation_; }

  double trace() const;
  /// Tr(rho^2).
  double purity() const;
  /// Branch as an (unnormalized) OccupationState.
  OccupationState branch_state(std::size_t b) const;
  /// Branch holding the largest weight.
  std::size_t dominant_branch() const;
  double branch_weight(std::size_t b) const;

 private:
  std::vector<Slot> slots_;
  std::vector<AmplitudeMap> branches_;
  int truncation_;
};

/// Density operator of one designated mode in the photon-number basis.
class DensityOperator {
 public:
  DensityOperator(std::string mode, Eigen::MatrixXcd matrix);

  const std::string& mode() const { return mode_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  complex operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double trace() const;
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// <psi|rho|psi> for a pure state given by photon-number amplitudes.
  double fidelity(const Eigen::VectorXcd& pure) const;
  Eigen::VectorXd diagonal() const;

  /// Throws NumericalError unless Hermitian, unit trace and positive within tol.
  void validate(double tol = 1e-9) const;

 private:
  std::string mode_;
  Eigen::MatrixXcd matrix_;
};

/// Reduced density operator of a single slot after tracing out every other
/// slot (and mixing over branches).
DensityOperator reduce_to_slot(const OccupationEnsemble& ensemble, std::size_t slot);
DensityOperator reduce_to_slot(const OccupationState& state, std::size_t slot);

}  // namespace specmodes
