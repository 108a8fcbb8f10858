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
#include <functional>
#include <span>
#include <vector>

#include "specmodes/spectral.hpp"

namespace specmodes {

/// Joint spectral distribution of n photons: a rank-n tensor with every axis
/// running over the grid nodes, stored row-major (axis 0 slowest). The
/// partition lists how many consecutive axes belong to each spatial mode.
class JointSDF {
 public:
  JointSDF(FrequencyGrid grid, std::vector<int> partition, Eigen::VectorXcd tensor);

  /// Samples fn(omega_1, ..., omega_n) on the grid.
  static JointSDF sample(const FrequencyGrid& grid, std::vector<int> partition,
                         const std::function<complex(std::span<const double>)>& fn);

  const FrequencyGrid& grid() const { return grid_; }
  int photon_count() const { return photon_count_; }
  const std::vector<int>& partition() const { return partition_; }
  const Eigen::VectorXcd& tensor() const { return tensor_; }
  std::size_t axis_length() const { return grid_.points(); }
  bool single_mode() const { return partition_.size() == 1; }

  /// Quadrature weight of one tensor cell, step^n.
  double cell_weight() const;

  /// sqrt of the integral of |psi|^2 over all frequencies.
  double separable_norm() const;
  bool is_separably_normalized(double tol = 1e-9) const;
  JointSDF normalized() const;

  JointSDF with_tensor(Eigen::VectorXcd tensor) const;

 private:
  FrequencyGrid grid_;
  std::vector<int> partition_;
  int photon_count_;
  Eigen::VectorXcd tensor_;
};

/// T[k_1, ..., k_n] = prod_j f_j[k_j]. An empty partition means one spatial
/// mode holding every photon.
JointSDF tensor_product_sdf(std::span<const SpectralFunction> factors,
                            std::vector<int> partition = {});

}  // namespace specmodes
