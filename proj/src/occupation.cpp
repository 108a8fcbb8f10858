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

#include "specmodes/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specmodes/errors.hpp"

namespace specmodes {

std::vector<Slot> mode_slots(std::string_view mode, int count) {
  std::vector<Slot> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(Slot{std::string(mode), i});
  return out;
}

namespace {

int total_photons(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

void check_slots_unique(const std::vector<Slot>& slots) {
  std::vector<Slot> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("occupation state slots must be distinct");
  }
}

[[noreturn]] void throw_truncation(int photons, int truncation) {
  std::ostringstream msg;
  msg << "occupation state would hold " << photons << " photons, above the truncation of "
      << truncation;
  throw TruncationError(msg.str());
}

}  // namespace

OccupationState::OccupationState(std::vector<Slot> slots, int truncation)
    : slots_(std::move(slots)), truncation_(truncation) {
  check_slots_unique(slots_);
  if (truncation_ < 0) throw UsageError("truncation must be nonnegative");
  amplitudes_.emplace(Occupation(slots_.size(), 0), 1.0);
}

OccupationState::OccupationState(std::vector<Slot> slots, AmplitudeMap amplitudes, int truncation)
    : slots_(std::move(slots)), amplitudes_(std::move(amplitudes)), truncation_(truncation) {
  check_slots_unique(slots_);
  for (const auto& [occ, amp] : amplitudes_) {
    if (occ.size() != slots_.size()) throw UsageError("occupation vector length differs from slot count");
    for (int m : occ) {
      if (m < 0) throw UsageError("occupation numbers must be nonnegative");
    }
    if (total_photons(occ) > truncation_) throw_truncation(total_photons(occ), truncation_);
  }
}

std::optional<std::size_t> OccupationState::find_slot(std::string_view mode, int eigenmode) const {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].mode == mode && slots_[i].eigenmode == eigenmode) return i;
  }
  return std::nullopt;
}

std::size_t OccupationState::slot_index(std::string_view mode, int eigenmode) const {
  auto idx = find_slot(mode, eigenmode);
  if (!idx) {
    std::ostringstream msg;
    msg << "no slot for mode '" << mode << "' eigenmode " << eigenmode;
    throw UsageError(msg.str());
  }
  return *idx;
}

std::vector<std::size_t> OccupationState::slots_of_mode(std::string_view mode) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].mode == mode) out.push_back(i);
  }
  return out;
}

complex OccupationState::amplitude(const Occupation& occ) const {
  auto it = amplitudes_.find(occ);
  return it == amplitudes_.end() ? complex{} : it->second;
}

double OccupationState::norm_squared() const {
  double total = 0.0;
  for (const auto& [occ, amp] : amplitudes_) total += std::norm(amp);
  return total;
}

OccupationState OccupationState::normalized() const {
  const double n2 = norm_squared();
  if (n2 == 0.0) throw NumericalError("cannot normalize a zero occupation state");
  return scaled(1.0 / std::sqrt(n2));
}

int OccupationState::max_total_photons() const {
  int best = 0;
  for (const auto& [occ, amp] : amplitudes_) {
    if (amp != complex{}) best = std::max(best, total_photons(occ));
  }
  return best;
}

complex OccupationState::inner(const OccupationState& other) const {
  if (slots_ != other.slots_) throw UsageError("inner product between states on different slots");
  complex total = 0.0;
  for (const auto& [occ, amp] : amplitudes_) total += std::conj(amp) * other.amplitude(occ);
  return total;
}

OccupationState OccupationState::scaled(complex factor) const {
  AmplitudeMap out = amplitudes_;
  for (auto& [occ, amp] : out) amp *= factor;
  return OccupationState(slots_, std::move(out), truncation_);
}

OccupationState OccupationState::plus(const OccupationState& other) const {
  if (slots_ != other.slots_) throw UsageError("cannot add states on different slots");
  AmplitudeMap out = amplitudes_;
  for (const auto& [occ, amp] : other.amplitudes_) out[occ] += amp;
  return OccupationState(slots_, std::move(out), std::max(truncation_, other.truncation_));
}

OccupationState OccupationState::pruned(double tol) const {
  AmplitudeMap out;
  for (const auto& [occ, amp] : amplitudes_) {
    if (std::abs(amp) > tol) out.emplace(occ, amp);
  }
  return OccupationState(slots_, std::move(out), truncation_);
}

OccupationState OccupationState::extended(const std::vector<Slot>& extra_slots) const {
  std::vector<Slot> slots = slots_;
  slots.insert(slots.end(), extra_slots.begin(), extra_slots.end());
  AmplitudeMap out;
  for (const auto& [occ, amp] : amplitudes_) {
    Occupation longer = occ;
    longer.resize(slots.size(), 0);
    out.emplace(std::move(longer), amp);
  }
  return OccupationState(std::move(slots), std::move(out), truncation_);
}

OccupationState apply_creation(const OccupationState& state, const LinearMode& op) {
  AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (amp == complex{}) continue;
    if (total_photons(occ) + 1 > state.truncation()) throw_truncation(total_photons(occ) + 1, state.truncation());
    for (const auto& [slot, coeff] : op) {
      if (slot >= occ.size()) throw UsageError("creation operator slot out of range");
      Occupation next = occ;
      ++next[slot];
      out[next] += amp * coeff * std::sqrt(static_cast<double>(next[slot]));
    }
  }
  return OccupationState(state.slots(), std::move(out), state.truncation());
}

OccupationState apply_pair_creation(const OccupationState& state, const PairOperator& op) {
  AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (amp == complex{}) continue;
    if (total_photons(occ) + 2 > state.truncation()) throw_truncation(total_photons(occ) + 2, state.truncation());
    for (const auto& [i, j, coeff] : op) {
      if (i >= occ.size() || j >= occ.size()) throw UsageError("pair creation slot out of range");
      Occupation next = occ;
      double factor = std::sqrt(static_cast<double>(++next[j]));
      factor *= std::sqrt(static_cast<double>(++next[i]));
      out[next] += amp * coeff * factor;
    }
  }
  return OccupationState(state.slots(), std::move(out), state.truncation());
}

OccupationEnsemble::OccupationEnsemble(std::vector<Slot> slots, std::vector<AmplitudeMap> branches, int truncation)
    : slots_(std::move(slots)), branches_(std::move(branches)), truncation_(truncation) {
  for (const auto& branch : branches_) {
    for (const auto& [occ, amp] : branch) {
      if (occ.size() != slots_.size()) throw UsageError("ensemble branch occupation length differs from slot count");
    }
  }
}

OccupationEnsemble::OccupationEnsemble(const OccupationState& pure)
    : OccupationEnsemble(pure.slots(), {pure.normalized().amplitudes()}, pure.truncation()) {}

namespace {

complex branch_inner(const AmplitudeMap& a, const AmplitudeMap& b) {
  complex total = 0.0;
  for (const auto& [occ, amp] : a) {
    auto it = b.find(occ);
    if (it != b.end()) total += std::conj(amp) * it->second;
  }
  return total;
}

}  // namespace

double OccupationEnsemble::trace() const {
  double total = 0.0;
  for (const auto& b : branches_) total += branch_inner(b, b).real();
  return total;
}

double OccupationEnsemble::purity() const {
  double total = 0.0;
  for (const auto& a : branches_) {
    for (const auto& b : branches_) total += std::norm(branch_inner(a, b));
  }
  return total;
}

OccupationState OccupationEnsemble::branch_state(std::size_t b) const {
  return OccupationState(slots_, branches_.at(b), truncation_);
}

double OccupationEnsemble::branch_weight(std::size_t b) const {
  return branch_inner(branches_.at(b), branches_.at(b)).real();
}

std::size_t OccupationEnsemble::dominant_branch() const {
  std::size_t best = 0;
  for (std::size_t b = 1; b < branches_.size(); ++b) {
    if (branch_weight(b) > branch_weight(best)) best = b;
  }
  return best;
}

DensityOperator::DensityOperator(std::string mode, Eigen::MatrixXcd matrix)
    : mode_(std::move(mode)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw UsageError("density operator must be a nonempty square matrix");
  }
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOperator::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double DensityOperator::fidelity(const Eigen::VectorXcd& pure) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(matrix_.rows());
  const Eigen::Index n = std::min(v.size(), pure.size());
  // Components beyond the cutoff have no support in rho.
  v.head(n) = pure.head(n);
  return v.dot(matrix_ * v).real() / pure.squaredNorm();
}

Eigen::VectorXd DensityOperator::diagonal() const { return matrix_.diagonal().real(); }

void DensityOperator::validate(double tol) const {
  std::ostringstream msg;
  if (hermiticity_error() > tol) {
    msg << "density operator is not Hermitian (deviation " << hermiticity_error() << ")";
  } else if (std::abs(trace() - 1.0) > tol) {
    msg << "density operator trace is " << trace();
  } else if (min_eigenvalue() < -tol) {
    msg << "density operator has a negative eigenvalue " << min_eigenvalue();
  } else {
    return;
  }
  throw NumericalError(msg.str());
}

DensityOperator reduce_to_slot(const OccupationEnsemble& ensemble, std::size_t slot) {
  if (slot >= ensemble.slots().size()) throw UsageError("slot index out of range");
  int max_occ = 0;
  for (const auto& branch : ensemble.branches()) {
    for (const auto& [occ, amp] : branch) {
      if (amp != complex{}) max_occ = std::max(max_occ, occ[slot]);
    }
  }
  const auto dim = static_cast<Eigen::Index>(max_occ + 1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& branch : ensemble.branches()) {
    // Group amplitudes by the occupation of every other slot.
    std::map<Occupation, std::vector<std::pair<int, complex>>> by_rest;
    for (const auto& [occ, amp] : branch) {
      Occupation rest = occ;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(slot));
      by_rest[rest].emplace_back(occ[slot], amp);
    }
    for (const auto& [rest, entries] : by_rest) {
      for (const auto& [a, amp_a] : entries) {
        for (const auto& [b, amp_b] : entries) rho(a, b) += amp_a * std::conj(amp_b);
      }
    }
  }
  const double tr = rho.trace().real();
  if (tr <= 0.0) throw NumericalError("reduced density operator has zero trace");
  return DensityOperator(ensemble.slots()[slot].mode, rho / tr);
}

DensityOperator reduce_to_slot(const OccupationState& state, std::size_t slot) {
  return reduce_to_slot(OccupationEnsemble(state), slot);
}

}  // namespace specmodes
