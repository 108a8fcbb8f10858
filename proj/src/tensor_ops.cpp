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

#include "tensor_ops.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "specmodes/errors.hpp"

namespace specmodes::detail {

std::size_t checked_power(std::size_t base, int exponent) {
  std::size_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
      throw ResourceError("tensor size overflows the address space");
    }
    out *= base;
  }
  return out;
}

Eigen::VectorXcd permute_axes(const Eigen::VectorXcd& tensor, std::size_t dim,
                              std::span<const int> perm) {
  const auto rank = perm.size();
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t a = rank; a-- > 1;) stride[a - 1] = stride[a] * dim;
  // src_step[b]: how far the source index moves when output axis b advances.
  std::vector<std::size_t> src_step(rank, 0);
  for (std::size_t a = 0; a < rank; ++a) src_step[static_cast<std::size_t>(perm[a])] = stride[a];

  Eigen::VectorXcd out(tensor.size());
  std::vector<std::size_t> idx(rank, 0);
  std::size_t src = 0;
  for (Eigen::Index flat = 0; flat < tensor.size(); ++flat) {
    out[flat] = tensor[static_cast<Eigen::Index>(src)];
    for (std::size_t b = rank; b-- > 0;) {
      if (++idx[b] < dim) {
        src += src_step[b];
        break;
      }
      idx[b] = 0;
      src -= src_step[b] * (dim - 1);
    }
  }
  return out;
}

void for_each_block_permutation(std::span<const int> blocks,
                                const std::function<void(const std::vector<int>&)>& fn) {
  const int rank = std::accumulate(blocks.begin(), blocks.end(), 0);
  std::vector<int> perm(static_cast<std::size_t>(rank));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> begin;
  std::size_t offset = 0;
  for (int b : blocks) {
    begin.push_back(offset);
    offset += static_cast<std::size_t>(b);
  }
  // Odometer over blocks; the last block cycles fastest.
  while (true) {
    fn(perm);
    std::size_t blk = blocks.size();
    bool advanced = false;
    while (blk-- > 0) {
      auto first = perm.begin() + static_cast<std::ptrdiff_t>(begin[blk]);
      auto last = first + blocks[blk];
      if (std::next_permutation(first, last)) {
        advanced = true;
        break;
      }
      // next_permutation wrapped the block back to sorted order; carry.
    }
    if (!advanced) return;
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double block_factorial_product(std::span<const int> blocks) {
  double f = 1.0;
  for (int b : blocks) f *= factorial(b);
  return f;
}

Eigen::VectorXcd multilinear_transform(const Eigen::VectorXcd& tensor, std::size_t in_dim,
                                       int rank, const Eigen::MatrixXcd& matrix) {
  if (static_cast<std::size_t>(matrix.cols()) != in_dim) {
    throw UsageError("multilinear transform: matrix width does not match axis length");
  }
  const auto out_dim = static_cast<std::size_t>(matrix.rows());
  Eigen::VectorXcd cur = tensor;
  std::size_t leading = in_dim;
  std::size_t rest = static_cast<std::size_t>(tensor.size()) / in_dim;
  for (int step = 0; step < rank; ++step) {
    Eigen::Map<const Eigen::MatrixXcd> as_cols(cur.data(), static_cast<Eigen::Index>(rest),
                                               static_cast<Eigen::Index>(leading));
    // Column-major storage of (M * A) is the row-major tensor with the
    // transformed axis rotated to the back.
    Eigen::MatrixXcd next = matrix * as_cols.transpose();
    cur = Eigen::Map<const Eigen::VectorXcd>(next.data(), next.size());
    if (step + 1 < rank) {
      const std::size_t total = static_cast<std::size_t>(cur.size());
      // After rotation the new leading axis is an untransformed one.
      leading = in_dim;
      rest = total / in_dim;
    }
  }
  (void)out_dim;
  return cur;
}

Eigen::MatrixXcd leading_axis_matrix(const Eigen::VectorXcd& tensor, std::size_t dim, int rank) {
  const std::size_t rest = checked_power(dim, rank - 1);
  Eigen::Map<const Eigen::MatrixXcd> as_cols(tensor.data(), static_cast<Eigen::Index>(rest),
                                             static_cast<Eigen::Index>(dim));
  return as_cols.transpose();
}

Eigen::VectorXcd tensor_power(const Eigen::VectorXcd& v, int rank) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXcd next(out.size() * v.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next.segment(i * v.size(), v.size()) = out[i] * v;
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace specmodes::detail
