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

// Dense row-major tensor helpers shared by the states and eigenmode modules.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specmodes::detail {

std::size_t checked_power(std::size_t base, int exponent);

/// T'[k_1..k_n] = T[k_perm[0], ..., k_perm[n-1]] for a tensor whose axes all
/// have length `dim`.
Eigen::VectorXcd permute_axes(const Eigen::VectorXcd& tensor, std::size_t dim,
                              std::span<const int> perm);

/// Calls fn once per element of the product group of per-block permutations,
/// in lexicographic order. Blocks are consecutive axis ranges of the given sizes.
void for_each_block_permutation(std::span<const int> blocks,
                                const std::function<void(const std::vector<int>&)>& fn);

double factorial(int n);
double block_factorial_product(std::span<const int> blocks);

/// Contracts every axis of a tensor with shape (in_dim)^rank against
/// `matrix` (out_dim x in_dim): out[i..] = sum_k M[i1,k1]...M[in,kn] T[k..].
Eigen::VectorXcd multilinear_transform(const Eigen::VectorXcd& tensor, std::size_t in_dim,
                                       int rank, const Eigen::MatrixXcd& matrix);

/// Reshapes the tensor so that axis 0 indexes rows (dim x dim^(rank-1)).
Eigen::MatrixXcd leading_axis_matrix(const Eigen::VectorXcd& tensor, std::size_t dim, int rank);

/// Rank-n symmetric power v (x) v (x) ... (x) v.
Eigen::VectorXcd tensor_power(const Eigen::VectorXcd& v, int rank);

}  // namespace specmodes::detail
