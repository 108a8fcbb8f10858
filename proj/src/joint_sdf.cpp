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

#include "specmodes/joint_sdf.hpp"

#include <cmath>
#include <numeric>

#include "specmodes/errors.hpp"
#include "tensor_ops.hpp"

namespace specmodes {

JointSDF::JointSDF(FrequencyGrid grid, std::vector<int> partition, Eigen::VectorXcd tensor)
    : grid_(grid), partition_(std::move(partition)), photon_count_(0), tensor_(std::move(tensor)) {
  if (partition_.empty()) throw UsageError("joint SDF partition must not be empty");
  for (int p : partition_) {
    if (p < 0) throw UsageError("joint SDF partition entries must be nonnegative");
  }
  photon_count_ = std::accumulate(partition_.begin(), partition_.end(), 0);
  if (photon_count_ < 1) throw UsageError("joint SDF must hold at least one photon");
  const std::size_t expected = detail::checked_power(grid_.points(), photon_count_);
  if (static_cast<std::size_t>(tensor_.size()) != expected) {
    throw UsageError("joint SDF tensor size does not equal points^n");
  }
}

JointSDF JointSDF::sample(const FrequencyGrid& grid, std::vector<int> partition,
                          const std::function<complex(std::span<const double>)>& fn) {
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  const std::size_t dim = grid.points();
  const std::size_t total = detail::checked_power(dim, n);
  Eigen::VectorXcd t(static_cast<Eigen::Index>(total));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> omegas(static_cast<std::size_t>(n), grid.node(0));
  for (std::size_t flat = 0; flat < total; ++flat) {
    t[static_cast<Eigen::Index>(flat)] = fn(omegas);
    for (std::size_t a = idx.size(); a-- > 0;) {
      if (++idx[a] < dim) {
        omegas[a] = grid.node(idx[a]);
        break;
      }
      idx[a] = 0;
      omegas[a] = grid.node(0);
    }
  }
  return JointSDF(grid, std::move(partition), std::move(t));
}

double JointSDF::cell_weight() const { return std::pow(grid_.weight(), photon_count_); }

double JointSDF::separable_norm() const {
  return std::sqrt(tensor_.squaredNorm() * cell_weight());
}

bool JointSDF::is_separably_normalized(double tol) const {
  return std::abs(tensor_.squaredNorm() * cell_weight() - 1.0) <= tol;
}

JointSDF JointSDF::normalized() const {
  const double n = separable_norm();
  if (n == 0.0 || !std::isfinite(n)) throw NumericalError("cannot normalize a zero joint SDF");
  return with_tensor(tensor_ / n);
}

JointSDF JointSDF::with_tensor(Eigen::VectorXcd tensor) const {
  return JointSDF(grid_, partition_, std::move(tensor));
}

JointSDF tensor_product_sdf(std::span<const SpectralFunction> factors, std::vector<int> partition) {
  if (factors.empty()) throw UsageError("tensor product needs at least one factor");
  const FrequencyGrid& grid = factors.front().grid();
  Eigen::VectorXcd t = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    require_same_grid(grid, f.grid());
    Eigen::VectorXcd next(t.size() * f.amplitudes().size());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      next.segment(i * f.amplitudes().size(), f.amplitudes().size()) = t[i] * f.amplitudes();
    }
    t = std::move(next);
  }
  if (partition.empty()) partition = {static_cast<int>(factors.size())};
  return JointSDF(grid, std::move(partition), std::move(t));
}

}  // namespace specmodes
