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

#include "specmodes/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specmodes/errors.hpp"
#include "tensor_ops.hpp"

namespace specmodes {
namespace {

void check_budget(std::span<const int> partition, const NormalizationOptions& options) {
  for (std::size_t m = 0; m < partition.size(); ++m) {
    if (partition[m] > options.max_photons_per_mode) {
      std::ostringstream msg;
      msg << "permutation sum over " << partition[m] << " photons in spatial mode " << m
          << " costs " << partition[m] << "! = " << detail::factorial(partition[m])
          << " tensor contractions; the budget allows at most "
          << options.max_photons_per_mode << " photons per mode";
      throw ResourceError(msg.str());
    }
  }
}

void check_normalized(const JointSDF& sdf, double tol) {
  if (!sdf.is_separably_normalized(tol)) {
    std::ostringstream msg;
    msg << "joint SDF must have unit separable norm (found " << sdf.separable_norm() << ")";
    throw UsageError(msg.str());
  }
}

}  // namespace

NormalizationReport normalization_factor(const JointSDF& sdf, const NormalizationOptions& options) {
  check_budget(sdf.partition(), options);
  check_normalized(sdf, options.norm_tol);

  NormalizationReport report;
  report.photon_count = sdf.photon_count();
  report.partition = sdf.partition();
  report.maximum = detail::block_factorial_product(sdf.partition());

  const Eigen::VectorXcd& t = sdf.tensor();
  const double w = sdf.cell_weight();
  // Single terms may be complex (a cycle pairs with its inverse); only the
  // imaginary part of the total is rounding noise.
  complex sum = 0.0;
  detail::for_each_block_permutation(sdf.partition(), [&](const std::vector<int>& perm) {
    sum += t.dot(detail::permute_axes(t, sdf.axis_length(), perm)) * w;
  });
  report.value = sum.real();
  report.imaginary_residue = std::abs(sum.imag());
  report.fully_symmetric = std::abs(report.value - report.maximum) <= options.symmetry_tol;
  return report;
}

double product_normalization_factor(std::span<const SpectralFunction> factors,
                                    std::span<const int> partition,
                                    const NormalizationOptions& options) {
  if (factors.empty()) throw UsageError("product normalization needs at least one factor");
  std::vector<int> blocks(partition.begin(), partition.end());
  if (blocks.empty()) blocks = {static_cast<int>(factors.size())};
  if (std::accumulate(blocks.begin(), blocks.end(), 0) != static_cast<int>(factors.size())) {
    throw UsageError("partition does not match the number of factors");
  }
  check_budget(blocks, options);
  for (const auto& f : factors) {
    if (!f.is_normalized(options.norm_tol)) throw UsageError("product normalization needs normalized factors");
  }
  const std::size_t n = factors.size();
  Eigen::MatrixXcd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = inner_product(factors[a], factors[b]);
    }
  }
  complex sum = 0.0;
  detail::for_each_block_permutation(blocks, [&](const std::vector<int>& perm) {
    complex term = 1.0;
    for (std::size_t k = 0; k < n; ++k) term *= gram(perm[k], static_cast<Eigen::Index>(k));
    sum += term;
  });
  return sum.real();
}

SymmetryVerdict is_fully_symmetric(const JointSDF& sdf, double tol) {
  const Eigen::VectorXcd& t = sdf.tensor();
  const double scale = t.norm();
  SymmetryVerdict verdict;
  if (scale == 0.0) {
    verdict.symmetric = true;
    return verdict;
  }
  std::vector<int> perm(static_cast<std::size_t>(sdf.photon_count()));
  int offset = 0;
  for (int block : sdf.partition()) {
    for (int a = offset; a + 1 < offset + block; ++a) {
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(a) + 1]);
      const double dev = (t - detail::permute_axes(t, sdf.axis_length(), perm)).norm() / scale;
      verdict.max_deviation = std::max(verdict.max_deviation, dev);
    }
    offset += block;
  }
  verdict.symmetric = verdict.max_deviation <= tol;
  return verdict;
}

Eigen::VectorXcd symmetric_part(const JointSDF& sdf, const NormalizationOptions& options) {
  check_budget(sdf.partition(), options);
  const Eigen::VectorXcd& t = sdf.tensor();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(t.size());
  detail::for_each_block_permutation(sdf.partition(), [&](const std::vector<int>& perm) {
    acc += detail::permute_axes(t, sdf.axis_length(), perm);
  });
  return acc / detail::block_factorial_product(sdf.partition());
}

JointSDF symmetrize(const JointSDF& sdf, const NormalizationOptions& options) {
  Eigen::VectorXcd sym = symmetric_part(sdf, options);
  const double input = sdf.tensor().norm();
  if (input == 0.0 || sym.norm() <= 1e-12 * input) {
    throw NumericalError("symmetric part of the joint SDF vanishes; it cannot be normalized");
  }
  return sdf.with_tensor(std::move(sym)).normalized();
}

FockFactor extract_fock_factor(const Eigen::VectorXcd& tensor, std::size_t dim, int rank) {
  const double scale = tensor.norm();
  if (scale == 0.0) throw NumericalError("cannot extract a Fock factor from a zero tensor");
  const Eigen::VectorXcd unit = tensor / scale;
  if (rank == 1) return {unit, 0.0};

  const Eigen::MatrixXcd lead = detail::leading_axis_matrix(unit, dim, rank);
  const Eigen::MatrixXcd reduced = lead * lead.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(reduced);
  Eigen::VectorXcd u = eig.eigenvectors().col(eig.eigenvectors().cols() - 1);

  const complex overlap = detail::tensor_power(u, rank).dot(unit);
  u *= std::polar(1.0, std::arg(overlap) / rank);
  const double residual = (unit - detail::tensor_power(u, rank)).norm();
  return {u, residual};
}

FockVerdict is_fock_state(const JointSDF& sdf, double tol) {
  if (!sdf.single_mode()) throw UsageError("Fock criterion applies to a single spatial mode");
  const double sqrt_w = std::sqrt(sdf.grid().weight());
  FockFactor ff = extract_fock_factor(sdf.tensor(), sdf.axis_length(), sdf.photon_count());
  SpectralFunction factor(sdf.grid(), ff.factor / sqrt_w);
  return FockVerdict{ff.residual <= tol, ff.residual, std::move(factor)};
}

}  // namespace specmodes
