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

#include "specmodes/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "specmodes/diagnostics.hpp"
#include "specmodes/errors.hpp"

namespace specmodes {

FrequencyGrid::FrequencyGrid(double omega_min, double omega_max,
                             std::size_t points)
    : omega_min_(omega_min), omega_max_(omega_max), points_(points), step_(0.0) {
  if (!std::isfinite(omega_min) || !std::isfinite(omega_max)) {
    throw ConfigError("frequency grid bounds must be finite");
  }
  if (points < 2) {
    throw ConfigError("frequency grid needs at least 2 points");
  }
  if (!(omega_max > omega_min)) {
    throw ConfigError("frequency grid has a degenerate span: omega_max must exceed omega_min");
  }
  step_ = (omega_max - omega_min) / static_cast<double>(points - 1);
}

Eigen::VectorXd FrequencyGrid::nodes() const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(points_));
  for (std::size_t k = 0; k < points_; ++k) w[static_cast<Eigen::Index>(k)] = node(k);
  return w;
}

FrequencyGrid make_uniform_grid(double omega_min, double omega_max,
                                std::size_t points) {
  return FrequencyGrid(omega_min, omega_max, points);
}

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b) {
  if (!(a == b)) throw UsageError("spectral functions live on different grids");
}

SpectralFunction::SpectralFunction(FrequencyGrid grid, Eigen::VectorXcd amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != grid_.points()) {
    throw UsageError("amplitude vector length does not match the grid");
  }
}

SpectralFunction SpectralFunction::zero(const FrequencyGrid& grid) {
  return SpectralFunction(grid, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.points())));
}

double SpectralFunction::norm() const {
  return std::sqrt(amplitudes_.squaredNorm() * grid_.weight());
}

bool SpectralFunction::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() * grid_.weight() - 1.0) <= tol;
}

SpectralFunction SpectralFunction::normalized() const {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n)) {
    throw NumericalError("cannot normalize a zero spectral function");
  }
  return SpectralFunction(grid_, amplitudes_ / n);
}

SpectralFunction SpectralFunction::scaled(complex factor) const {
  return SpectralFunction(grid_, amplitudes_ * factor);
}

SpectralFunction operator+(const SpectralFunction& a, const SpectralFunction& b) {
  require_same_grid(a.grid(), b.grid());
  return SpectralFunction(a.grid(), a.amplitudes() + b.amplitudes());
}

SpectralFunction operator-(const SpectralFunction& a, const SpectralFunction& b) {
  require_same_grid(a.grid(), b.grid());
  return SpectralFunction(a.grid(), a.amplitudes() - b.amplitudes());
}

SpectralFunction gaussian_pulse(const FrequencyGrid& grid, double center,
                                double width, double delay) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ConfigError("gaussian pulse width must be positive");
  }
  if (center - 4.0 * width < grid.omega_min() || center + 4.0 * width > grid.omega_max()) {
    std::ostringstream msg;
    msg << "gaussian pulse (center " << center << ", width " << width
        << ") extends beyond the grid span [" << grid.omega_min() << ", "
        << grid.omega_max() << "]; normalization is affected by truncation";
    warn(msg.str());
  }
  Eigen::VectorXcd amp(static_cast<Eigen::Index>(grid.points()));
  for (std::size_t k = 0; k < grid.points(); ++k) {
    const double w = grid.node(k);
    const double x = w - center;
    amp[static_cast<Eigen::Index>(k)] =
        std::exp(-x * x / (4.0 * width * width)) * std::polar(1.0, -w * delay);
  }
  return SpectralFunction(grid, std::move(amp)).normalized();
}

SpectralFunction rect_window(const FrequencyGrid& grid, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("rect window needs lo < hi");
  const double slack = 1e-9 * grid.step();
  if (lo < grid.omega_min() - slack || hi > grid.omega_max() + slack) {
    throw ConfigError("rect window must lie within the grid span");
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.points()));
  std::size_t inside = 0;
  for (std::size_t k = 0; k < grid.points(); ++k) {
    const double w = grid.node(k);
    if (w >= lo - slack && w <= hi + slack) {
      amp[static_cast<Eigen::Index>(k)] = 1.0;
      ++inside;
    }
  }
  if (inside == 0) throw ConfigError("rect window contains no grid nodes");
  return SpectralFunction(grid, std::move(amp)).normalized();
}

SpectralFunction grid_indicator(const FrequencyGrid& grid, std::size_t node) {
  if (node >= grid.points()) throw UsageError("grid node index out of range");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.points()));
  amp[static_cast<Eigen::Index>(node)] = 1.0 / std::sqrt(grid.weight());
  return SpectralFunction(grid, std::move(amp));
}

SpectralFunction hermite_gauss(const FrequencyGrid& grid, double center,
                               double scale, int order) {
  if (!(scale > 0.0)) throw ConfigError("hermite-gauss scale must be positive");
  if (order < 0) throw ConfigError("hermite-gauss order must be nonnegative");
  const auto n = static_cast<Eigen::Index>(grid.points());
  Eigen::VectorXd prev(n), cur(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = (grid.node(static_cast<std::size_t>(k)) - center) / scale;
    prev[k] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    cur[k] = std::sqrt(2.0) * x * prev[k];
  }
  Eigen::VectorXd out = order == 0 ? prev : cur;
  for (int j = 1; j < order; ++j) {
    Eigen::VectorXd next(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double x = (grid.node(static_cast<std::size_t>(k)) - center) / scale;
      next[k] = std::sqrt(2.0 / (j + 1)) * x * cur[k] - std::sqrt(static_cast<double>(j) / (j + 1)) * prev[k];
    }
    prev = std::move(cur);
    cur = std::move(next);
    out = cur;
  }
  return SpectralFunction(grid, out.cast<complex>()).normalized();
}

complex inner_product(const SpectralFunction& f, const SpectralFunction& g) {
  require_same_grid(f.grid(), g.grid());
  return f.amplitudes().dot(g.amplitudes()) * f.grid().weight();
}

double overlap_gamma(const SpectralFunction& f, const SpectralFunction& g) {
  return std::norm(inner_product(f, g));
}

}  // namespace specmodes
