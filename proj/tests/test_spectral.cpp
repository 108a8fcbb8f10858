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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "specmodes/diagnostics.hpp"
#include "specmodes/errors.hpp"
#include "specmodes/joint_sdf.hpp"
#include "specmodes/spectral.hpp"

using namespace specmodes;

namespace {
// Wide enough that a unit-width Gaussian and its delays are well resolved.
FrequencyGrid fine_grid() { return make_uniform_grid(-12.0, 12.0, 481); }
}  // namespace

TEST_CASE("uniform grid construction") {
  auto g = make_uniform_grid(-5, 5, 11);
  CHECK(g.step() == doctest::Approx(1.0));
  CHECK(g.weight() == g.step());
  CHECK(g.node(10) == doctest::Approx(5.0));

  auto small = make_uniform_grid(0, 1, 2);
  CHECK(small.node(0) == 0.0);
  CHECK(small.node(1) == 1.0);
  CHECK(small.step() == 1.0);

  CHECK_THROWS_AS(make_uniform_grid(1, 1, 4), ConfigError);
  CHECK_THROWS_AS(make_uniform_grid(0, 1, 1), ConfigError);
  CHECK_THROWS_AS(make_uniform_grid(2, 1, 5), ConfigError);
}

TEST_CASE("gaussian pulse") {
  auto g = fine_grid();
  auto f = gaussian_pulse(g, 0, 1);
  CHECK(f.is_normalized(1e-9));
  // real positive peak at the center node
  const std::size_t mid = g.points() / 2;
  CHECK(f[mid].real() > 0.0);
  CHECK(std::abs(f[mid].imag()) < 1e-15);
  for (std::size_t k = 0; k < g.points(); ++k) CHECK(std::abs(f[k]) <= std::abs(f[mid]) + 1e-15);

  CHECK_THROWS_AS(gaussian_pulse(g, 0, 0), ConfigError);
  CHECK_THROWS_AS(gaussian_pulse(g, 0, -1), ConfigError);
}

TEST_CASE("delayed gaussian overlaps follow the analytic integral") {
  auto g = fine_grid();
  for (double sigma : {0.7, 1.0, 1.5}) {
    auto f0 = gaussian_pulse(g, 0.3, sigma);
    for (double tau : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      auto ft = gaussian_pulse(g, 0.3, sigma, tau);
      CAPTURE(sigma);
      CAPTURE(tau);
      CHECK(std::abs(std::abs(inner_product(ft, f0)) - oracle::gaussian_delay_overlap(sigma, tau)) < 1e-6);
      CHECK(std::abs(overlap_gamma(ft, f0) - std::exp(-sigma * sigma * tau * tau)) < 1e-6);
    }
  }
  // well separated in time: tau = 20 / sigma
  auto f0 = gaussian_pulse(g, 0, 1);
  auto far = gaussian_pulse(g, 0, 1, 20.0);
  CHECK(std::abs(inner_product(far, f0)) < 1e-3);
}

TEST_CASE("narrow grid triggers an adequacy warning") {
  auto g = make_uniform_grid(-2, 2, 41);
  ScopedWarningCapture capture;
  auto f = gaussian_pulse(g, 0, 1);
  CHECK(f.is_normalized());
  CHECK(capture.messages().size() == 1);

  ScopedWarningCapture quiet;
  (void)gaussian_pulse(fine_grid(), 0, 1);
  CHECK(quiet.messages().empty());
}

TEST_CASE("rect window") {
  auto g = make_uniform_grid(-4, 4, 81);
  auto full = rect_window(g, -4, 4);
  CHECK(full.is_normalized());
  for (std::size_t k = 1; k < g.points(); ++k) CHECK(std::abs(full[k] - full[0]) < 1e-15);

  CHECK_THROWS_AS(rect_window(g, 0.01, 0.02), ConfigError);
  CHECK_THROWS_AS(rect_window(g, 1, 1), ConfigError);
  CHECK_THROWS_AS(rect_window(g, -5, 1), ConfigError);

  auto left = rect_window(g, -4, -1);
  auto right = rect_window(g, 1, 4);
  CHECK(inner_product(left, right) == complex(0.0, 0.0));
  CHECK(overlap_gamma(left, right) == 0.0);
}

TEST_CASE("half-span window against a centered gaussian") {
  // Oracle: the Gaussian amplitude integral over half its support, evaluated
  // on a much finer grid, compared with the coarse-grid library value.
  auto coarse = make_uniform_grid(-6, 6, 241);
  auto fg = gaussian_pulse(coarse, 0, 1);
  auto half = rect_window(coarse, 0, 6);
  const double lib = overlap_gamma(half, fg);

  const int n = 200001;
  const double h = 6.0 / (n - 1);
  double amp = 0.0, amp2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = i * h;
    const double wt = (i == 0 || i == n - 1) ? 0.5 * h : h;
    amp += std::exp(-w * w / 4.0) * wt;
    amp2 += std::exp(-w * w / 2.0) * wt;
  }
  // |<window, g>|^2 = (int_0^6 g)^2 / (6 * 2 * int_0^6 g^2)
  const double oracle_gamma = amp * amp / (6.0 * 2.0 * amp2);
  CHECK(std::abs(lib - oracle_gamma) < 5e-3);
  CHECK(lib == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("inner product conventions") {
  auto g = make_uniform_grid(-6, 6, 121);
  auto f = gaussian_pulse(g, 0, 1, 0.4);
  auto h = gaussian_pulse(g, 0.5, 0.8);
  const complex a(0.3, -1.2);
  CHECK(std::abs(inner_product(f, f) - 1.0) < 1e-9);
  CHECK(std::abs(inner_product(f.scaled(a), h) - std::conj(a) * inner_product(f, h)) < 1e-12);
  CHECK(std::abs(inner_product(f, h.scaled(a)) - a * inner_product(f, h)) < 1e-12);
  CHECK(std::abs(inner_product(f, h) - std::conj(inner_product(h, f))) < 1e-14);

  auto other = make_uniform_grid(-6, 6, 120);
  CHECK_THROWS_AS(inner_product(f, gaussian_pulse(other, 0, 1)), UsageError);
  CHECK_THROWS_AS(overlap_gamma(f, gaussian_pulse(other, 0, 1)), UsageError);
}

TEST_CASE("Cauchy-Schwarz and gamma symmetry on random functions") {
  auto g = make_uniform_grid(-3, 3, 17);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    SpectralFunction f(g, oracle::random_vector(rng, 17));
    SpectralFunction h(g, oracle::random_vector(rng, 17));
    const double lhs = std::norm(inner_product(f, h));
    const double rhs = inner_product(f, f).real() * inner_product(h, h).real();
    CHECK(lhs <= rhs * (1 + 1e-12));

    auto fn = f.normalized();
    auto hn = h.normalized();
    const double gamma = overlap_gamma(fn, hn);
    CHECK(gamma >= 0.0);
    CHECK(gamma <= 1.0 + 1e-12);
    CHECK(std::abs(gamma - overlap_gamma(hn, fn)) < 1e-14);
    const complex phase = std::polar(1.0, 0.37 * trial);
    CHECK(std::abs(gamma - overlap_gamma(fn.scaled(phase), hn)) < 1e-13);
    CHECK(std::abs(gamma - overlap_gamma(fn, hn.scaled(phase))) < 1e-13);
  }
}

TEST_CASE("overlap gamma limits") {
  auto g = fine_grid();
  auto f = gaussian_pulse(g, 0, 1);
  CHECK(std::abs(overlap_gamma(f, f) - 1.0) < 1e-12);
  CHECK(overlap_gamma(rect_window(g, -3, -1), rect_window(g, 1, 3)) == 0.0);
}

TEST_CASE("hermite-gauss family is orthonormal and matches the pulse at order 0") {
  auto g = fine_grid();
  std::vector<SpectralFunction> hg;
  for (int k = 0; k < 8; ++k) hg.push_back(hermite_gauss(g, 0.2, std::sqrt(2.0) * 1.1, k));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(std::abs(inner_product(hg[i], hg[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);
  auto p = gaussian_pulse(g, 0.2, 1.1);
  CHECK((hg[0].amplitudes() - p.amplitudes()).norm() < 1e-12);
}

TEST_CASE("tensor product sdf") {
  auto g = make_uniform_grid(-6, 6, 25);
  auto f = gaussian_pulse(g, 0, 1);
  auto h = gaussian_pulse(g, 0, 1, 3.0);

  std::vector<SpectralFunction> one{f};
  auto single = tensor_product_sdf(one);
  CHECK(single.photon_count() == 1);
  CHECK((single.tensor() - f.amplitudes()).norm() < 1e-15);

  std::vector<SpectralFunction> three{f, f, f};
  auto t3 = tensor_product_sdf(three);
  CHECK(t3.photon_count() == 3);
  CHECK(t3.is_separably_normalized());
  const std::size_t d = g.points();
  for (std::size_t a = 0; a < d; a += 3)
    for (std::size_t b = 0; b < d; b += 5)
      for (std::size_t c = 0; c < d; c += 7) {
        const auto v = t3.tensor()[(a * d + b) * d + c];
        CHECK(std::abs(v - t3.tensor()[(b * d + c) * d + a]) < 1e-15);
        CHECK(std::abs(v - f[a] * f[b] * f[c]) < 1e-15);
      }

  // separable norm is the product of factor norms, even for unnormalized factors
  auto scaled = f.scaled(1.7);
  std::vector<SpectralFunction> mixed{scaled, h};
  CHECK(std::abs(tensor_product_sdf(mixed).separable_norm() - 1.7) < 1e-9);

  std::vector<SpectralFunction> none;
  CHECK_THROWS_AS(tensor_product_sdf(none), UsageError);
}
