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

#include "specmodes/eigenmode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specmodes/diagnostics.hpp"
#include "specmodes/errors.hpp"
#include "specmodes/states.hpp"
#include "tensor_ops.hpp"

namespace specmodes {

EigenBasis::EigenBasis(FrequencyGrid grid, std::vector<SpectralFunction> functions, double tol)
    : grid_(grid), functions_(std::move(functions)) {
  if (functions_.size() > grid_.points()) {
    throw DimensionError("a basis cannot hold more functions than grid points");
  }
  matrix_.resize(static_cast<Eigen::Index>(grid_.points()), static_cast<Eigen::Index>(functions_.size()));
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    require_same_grid(grid_, functions_[i].grid());
    matrix_.col(static_cast<Eigen::Index>(i)) = functions_[i].amplitudes();
  }
  const double err = orthonormality_error();
  if (err > tol) {
    std::ostringstream msg;
    msg << "basis functions are not orthonormal (max deviation " << err << ")";
    throw UsageError(msg.str());
  }
}

Eigen::VectorXcd EigenBasis::coefficients(const SpectralFunction& f) const {
  require_same_grid(grid_, f.grid());
  return matrix_.adjoint() * f.amplitudes() * grid_.weight();
}

SpectralFunction EigenBasis::synthesize(const Eigen::VectorXcd& coefficients) const {
  if (coefficients.size() != matrix_.cols()) throw UsageError("coefficient count does not match basis size");
  return SpectralFunction(grid_, matrix_ * coefficients);
}

double EigenBasis::orthonormality_error() const {
  if (functions_.empty()) return 0.0;
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_ * grid_.weight();
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

namespace {

// Orthogonalizes v (Euclidean coordinates) against the unit columns in `units`
// twice; returns the remaining norm.
double orthogonalize(Eigen::VectorXcd& v, const std::vector<Eigen::VectorXcd>& units) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : units) v -= u * u.dot(v);
  }
  return v.norm();
}

}  // namespace

EigenBasis gram_schmidt(std::span<const SpectralFunction> seeds, double tol) {
  if (seeds.empty()) throw DimensionError("gram-schmidt needs at least one seed");
  const FrequencyGrid& grid = seeds.front().grid();
  const double sqrt_w = std::sqrt(grid.weight());
  std::vector<Eigen::VectorXcd> units;
  std::vector<SpectralFunction> out;
  for (const auto& seed : seeds) {
    require_same_grid(grid, seed.grid());
    Eigen::VectorXcd v = seed.amplitudes();
    const double seed_norm = v.norm();
    if (seed_norm == 0.0) continue;
    const double remaining = orthogonalize(v, units);
    if (remaining < tol * seed_norm) continue;
    v /= remaining;
    units.push_back(v);
    out.emplace_back(grid, v / sqrt_w);
    if (out.size() == grid.points()) break;
  }
  if (out.empty()) throw DimensionError("gram-schmidt dropped every seed; the basis is empty");
  return EigenBasis(grid, std::move(out));
}

FillerFamily FillerFamily::matched_to_pulse(double center, double width) {
  return hermite_gauss(center, std::sqrt(2.0) * width);
}

std::vector<SpectralFunction> FillerFamily::members(const FrequencyGrid& grid, std::size_t count) const {
  count = std::min(count, grid.points());
  std::vector<SpectralFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (kind == Kind::HermiteGauss) {
      out.push_back(specmodes::hermite_gauss(grid, center, scale, static_cast<int>(i)));
    } else {
      out.push_back(grid_indicator(grid, i));
    }
  }
  return out;
}

EigenBasis basis_containing(const SpectralFunction& f, const FillerFamily& filler, std::size_t size) {
  if (size == 0) throw DimensionError("requested basis size must be positive");
  if (!f.is_normalized()) throw UsageError("basis_containing needs a normalized function");
  const FrequencyGrid& grid = f.grid();
  const double sqrt_w = std::sqrt(grid.weight());
  std::vector<SpectralFunction> out{f};
  std::vector<Eigen::VectorXcd> units{f.amplitudes().normalized()};
  const double tol = 1e-10;
  for (std::size_t i = 0; i < grid.points() && out.size() < size; ++i) {
    const SpectralFunction member =
        filler.kind == FillerFamily::Kind::HermiteGauss
            ? hermite_gauss(grid, filler.center, filler.scale, static_cast<int>(i))
            : grid_indicator(grid, i);
    Eigen::VectorXcd v = member.amplitudes();
    const double seed_norm = v.norm();
    const double remaining = orthogonalize(v, units);
    if (remaining < tol * seed_norm) continue;
    v /= remaining;
    units.push_back(v);
    out.emplace_back(grid, v / sqrt_w);
  }
  if (out.size() < size) {
    std::ostringstream msg;
    msg << "requested a basis of " << size << " functions but only " << out.size()
        << " independent directions are available";
    throw DimensionError(msg.str());
  }
  return EigenBasis(grid, std::move(out));
}

ModeDecomposition::ModeDecomposition(EigenBasis basis, int photon_count,
                                     std::map<MultiIndex, complex> coefficients, double residual)
    : basis_(std::move(basis)),
      photon_count_(photon_count),
      coefficients_(std::move(coefficients)),
      residual_(residual) {
  for (const auto& [key, value] : coefficients_) {
    if (static_cast<int>(key.size()) != photon_count_) throw UsageError("multi-index length differs from photon count");
    if (!std::is_sorted(key.begin(), key.end())) throw UsageError("multi-index keys must be nondecreasing");
    for (int i : key) {
      if (i < 0 || static_cast<std::size_t>(i) >= basis_.size()) throw UsageError("multi-index outside the basis");
    }
  }
}

ModeDecomposition ModeDecomposition::vacuum(EigenBasis basis) {
  return ModeDecomposition(std::move(basis), 0, {{MultiIndex{}, complex{1.0}}});
}

OccupationVector ModeDecomposition::occupation(const MultiIndex& key) const {
  OccupationVector occ(basis_.size(), 0);
  for (int i : key) ++occ[static_cast<std::size_t>(i)];
  return occ;
}

std::map<OccupationVector, complex> ModeDecomposition::occupation_amplitudes() const {
  std::map<OccupationVector, complex> out;
  for (const auto& [key, lambda] : coefficients_) {
    OccupationVector occ = occupation(key);
    double weight = 1.0;
    for (int m : occ) weight *= detail::factorial(m);
    out.emplace(std::move(occ), std::sqrt(weight) * lambda);
  }
  return out;
}

double ModeDecomposition::occupation_norm() const {
  double total = 0.0;
  for (const auto& [occ, amp] : occupation_amplitudes()) total += std::norm(amp);
  return total;
}

Eigen::VectorXcd project_onto_basis(const JointSDF& sdf, const EigenBasis& basis) {
  require_same_grid(sdf.grid(), basis.grid());
  const Eigen::MatrixXcd analysis = basis.matrix().adjoint() * sdf.grid().weight();
  return detail::multilinear_transform(sdf.tensor(), sdf.axis_length(), sdf.photon_count(), analysis);
}

Eigen::MatrixXcd lambda_matrix(const JointSDF& sdf, const EigenBasis& basis) {
  if (sdf.photon_count() != 2) throw UsageError("lambda matrix needs a two-photon SDF");
  const Eigen::VectorXcd raw = project_onto_basis(sdf, basis);
  return detail::leading_axis_matrix(raw, basis.size(), 2);
}

namespace {

double distinct_orderings(const MultiIndex& key) {
  double count = detail::factorial(static_cast<int>(key.size()));
  std::size_t i = 0;
  while (i < key.size()) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) ++j;
    count /= detail::factorial(static_cast<int>(j - i));
    i = j;
  }
  return count;
}

// Calls fn(flat, index tuple) for every element of a dim^rank tensor.
template <class Fn>
void for_each_index(std::size_t dim, int rank, Fn&& fn) {
  const std::size_t total = detail::checked_power(dim, rank);
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (std::size_t a = idx.size(); a-- > 0;) {
      if (static_cast<std::size_t>(++idx[a]) < dim) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

ModeDecomposition decompose(const JointSDF& sdf, const EigenBasis& basis, const DecomposeOptions& options) {
  if (!sdf.single_mode()) throw UsageError("decompose needs a single spatial mode; use lambda_matrix for multimode SDFs");
  const Eigen::VectorXcd raw = project_onto_basis(sdf, basis);
  std::map<MultiIndex, complex> summed;
  for_each_index(basis.size(), sdf.photon_count(), [&](std::size_t flat, const std::vector<int>& idx) {
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    summed[key] += raw[static_cast<Eigen::Index>(flat)];
  });
  std::map<MultiIndex, complex> kept;
  for (auto& [key, value] : summed) {
    if (std::abs(value) > options.drop_tol) kept.emplace(key, value);
  }
  ModeDecomposition dec(basis, sdf.photon_count(), std::move(kept));

  const double input_norm = sdf.separable_norm();
  double residual = 0.0;
  if (input_norm > 0.0) {
    const Eigen::VectorXcd sym = symmetric_part(sdf);
    const JointSDF rec = reconstruct(dec);
    residual = (sym - rec.tensor()).norm() * std::sqrt(sdf.cell_weight()) / input_norm;
  }
  if (residual > options.residual_warn) {
    std::ostringstream msg;
    msg << "basis does not span the SDF: decomposition residual " << residual;
    warn(msg.str());
  }
  return ModeDecomposition(basis, sdf.photon_count(), dec.coefficients(), residual);
}

Eigen::VectorXcd symmetric_coefficient_tensor(const ModeDecomposition& dec) {
  const std::size_t d = dec.basis().size();
  Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::checked_power(d, dec.photon_count())));
  for_each_index(d, dec.photon_count(), [&](std::size_t flat, const std::vector<int>& idx) {
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    auto it = dec.coefficients().find(key);
    if (it != dec.coefficients().end()) {
      coeff[static_cast<Eigen::Index>(flat)] = it->second / distinct_orderings(key);
    }
  });
  return coeff;
}

JointSDF reconstruct(const ModeDecomposition& dec) {
  const EigenBasis& basis = dec.basis();
  const Eigen::VectorXcd coeff = symmetric_coefficient_tensor(dec);
  Eigen::VectorXcd t = detail::multilinear_transform(coeff, basis.size(), dec.photon_count(), basis.matrix());
  return JointSDF(basis.grid(), {dec.photon_count()}, std::move(t));
}

TwoModeSplit two_mode_split(const SpectralFunction& psi, const SpectralFunction& phi, double overlap_tol) {
  require_same_grid(psi.grid(), phi.grid());
  const complex lambda1 = inner_product(phi, psi);
  const SpectralFunction remainder = psi - phi.scaled(lambda1);
  const double remaining = remainder.norm();
  if (remaining <= overlap_tol) {
    return TwoModeSplit{phi, SpectralFunction::zero(psi.grid()), lambda1, 0.0, true};
  }
  const double lambda0 = std::sqrt(std::max(0.0, 1.0 - std::norm(lambda1)));
  return TwoModeSplit{phi, remainder.scaled(1.0 / remaining), lambda1, lambda0, false};
}

double SchmidtDecomposition::schmidt_number() const {
  double s4 = 0.0, s2 = 0.0;
  for (double s : coefficients) {
    s2 += s * s;
    s4 += s * s * s * s;
  }
  return s4 > 0.0 ? s2 * s2 / s4 : 0.0;
}

complex canonical_phase(const Eigen::VectorXcd& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8 * peak) return v[i] / std::abs(v[i]);
  }
  return 1.0;
}

SchmidtDecomposition schmidt_decompose(const JointSDF& biphoton, const EigenBasis& basis, double drop_tol) {
  if (biphoton.partition() != std::vector<int>{1, 1}) {
    throw UsageError("schmidt decomposition needs one photon in each of two spatial modes");
  }
  const Eigen::MatrixXcd lambda = lambda_matrix(biphoton, basis);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lambda, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtDecomposition out;
  const auto& s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] <= drop_tol) continue;
    Eigen::VectorXcd a = svd.matrixU().col(k);
    Eigen::VectorXcd b = svd.matrixV().col(k).conjugate();
    const complex phase = canonical_phase(a);
    a /= phase;
    b *= phase;
    out.coefficients.push_back(s[k]);
    out.modes_a.push_back(basis.synthesize(a));
    out.modes_b.push_back(basis.synthesize(b));
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(const JointSDF& biphoton, double drop_tol) {
  const auto members = FillerFamily::grid_indicators().members(biphoton.grid(), biphoton.grid().points());
  return schmidt_decompose(biphoton, EigenBasis(biphoton.grid(), members), drop_tol);
}

}  // namespace specmodes
