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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specmodes {

using complex = std::complex<double>;

/// Uniform discretization of angular frequency. Every node carries the same
/// quadrature weight, equal to the grid step.
class FrequencyGrid {
 public:
  FrequencyGrid(double omega_min, double omega_max, std::size_t points);

  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  std::size_t points() const { return points_; }
  double step() const { return step_; }
  double weight() const { return step_; }
  double node(std::size_t k) const {
    return omega_min_ + static_cast<double>(k) * step_;
  }
  Eigen::VectorXd nodes() const;

  bool operator==(const FrequencyGrid& other) const {
    return omega_min_ == other.omega_min_ && omega_max_ == other.omega_max_ &&
           points_ == other.points_;
  }

 private:
  double omega_min_;
  double omega_max_;
  std::size_t points_;
  double step_;
};

FrequencyGrid make_uniform_grid(double omega_min, double omega_max,
                                std::size_t points);

/// Complex amplitude sampled on a frequency grid.
class SpectralFunction {
 public:
  SpectralFunction(FrequencyGrid grid, Eigen::VectorXcd amplitudes);

  static SpectralFunction zero(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
  complex operator[](std::size_t k) const { return amplitudes_[static_cast<Eigen::Index>(k)]; }

  /// sqrt(<f, f>) under the grid inner product.
  double norm() const;
  bool is_normalized(double tol = 1e-9) const;
  SpectralFunction normalized() const;

  SpectralFunction scaled(complex factor) const;

 private:
  FrequencyGrid grid_;
  Eigen::VectorXcd amplitudes_;
};

SpectralFunction operator+(const SpectralFunction& a, const SpectralFunction& b);
SpectralFunction operator-(const SpectralFunction& a, const SpectralFunction& b);

/// Normalized Gaussian exp(-(w - center)^2 / (4 width^2)) carrying the delay
/// phase exp(-i w delay). Warns when the grid does not cover center +- 4 width.
SpectralFunction gaussian_pulse(const FrequencyGrid& grid, double center,
                                double width, double delay = 0.0);

/// Normalized indicator of [lo, hi].
SpectralFunction rect_window(const FrequencyGrid& grid, double lo, double hi);

/// Normalized indicator of a single grid node.
SpectralFunction grid_indicator(const FrequencyGrid& grid, std::size_t node);

/// Order-`order` Hermite-Gauss function in the variable (w - center) / scale,
/// normalized on the grid. Order 0 with scale = sqrt(2) * width coincides with
/// gaussian_pulse(grid, center, width).
SpectralFunction hermite_gauss(const FrequencyGrid& grid, double center,
                               double scale, int order);

/// sum_k conj(f_k) g_k * step. Conjugate-linear in the first argument.
complex inner_product(const SpectralFunction& f, const SpectralFunction& g);

/// |<f, g>|^2.
double overlap_gamma(const SpectralFunction& f, const SpectralFunction& g);

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b);

}  // namespace specmodes
