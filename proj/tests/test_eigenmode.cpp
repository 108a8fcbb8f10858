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
#include "specmodes/eigenmode.hpp"
#include "specmodes/errors.hpp"
#include "specmodes/experiments.hpp"
#include "specmodes/states.hpp"

using namespace specmodes;

namespace {

EigenBasis random_complete_basis(std::mt19937_64& rng, const FrequencyGrid& g) {
  std::vector<SpectralFunction> seeds;
  for (std::size_t k = 0; k < g.points(); ++k) seeds.emplace_back(g, oracle::random_vector(rng, g.points()));
  return gram_schmidt(seeds);
}

JointSDF random_symmetric(std::mt19937_64& rng, const FrequencyGrid& g, int n) {
  const auto size = static_cast<Eigen::Index>(std::pow(g.points(), n));
  return symmetrize(JointSDF(g, {n}, oracle::random_vector(rng, size)).normalized());
}

}  // namespace

TEST_CASE("gram-schmidt") {
  auto g = make_uniform_grid(-8, 8, 129);
  std::vector<SpectralFunction> raw;
  for (int k = 0; k < 5; ++k) raw.push_back(hermite_gauss(g, 0, 1.4, k));
  // orthonormal to rounding after one pass
  const auto hg = gram_schmidt(raw).functions();
  auto same = gram_schmidt(hg);
  REQUIRE(same.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK((same[k].amplitudes() - hg[k].amplitudes()).norm() < 1e-12);

  std::vector<SpectralFunction> dup{hg[0], hg[1], hg[0]};
  CHECK(gram_schmidt(dup).size() == 2);

  auto a = gaussian_pulse(g, 0, 1).scaled(2.5);
  auto b = gaussian_pulse(g, 0, 1, 0.8);
  std::vector<SpectralFunction> ab{a, b};
  auto basis = gram_schmidt(ab);
  REQUIRE(basis.size() == 2);
  CHECK(std::abs(inner_product(basis[0], basis[1])) < 1e-12);
  CHECK((basis[0].amplitudes() - a.normalized().amplitudes()).norm() < 1e-12);
  for (const auto& seed : ab) {
    auto back = basis.synthesize(basis.coefficients(seed));
    CHECK((back - seed).norm() < 1e-9);
  }

  std::vector<SpectralFunction> zeros{SpectralFunction::zero(g)};
  CHECK_THROWS_AS(gram_schmidt(zeros), DimensionError);
}

TEST_CASE("basis containing an arbitrary function") {
  auto g = make_uniform_grid(-6, 6, 97);
  auto rect = rect_window(g, -0.5, 0.5);
  auto basis = basis_containing(rect, FillerFamily::matched_to_pulse(0, 1), 12);
  CHECK(basis.size() == 12);
  CHECK(basis[0].amplitudes() == rect.amplitudes());
  CHECK(basis.orthonormality_error() < 1e-9);
  for (std::size_t k = 1; k < basis.size(); ++k) CHECK(std::abs(inner_product(basis[0], basis[k])) < 1e-9);

  auto single = basis_containing(rect, FillerFamily::grid_indicators(), 1);
  CHECK(single.size() == 1);
  CHECK(single[0].amplitudes() == rect.amplitudes());

  // f equal to the first filler member: Gram-Schmidt of the family itself
  auto family = FillerFamily::matched_to_pulse(0, 1);
  auto members = family.members(g, 6);
  auto own = basis_containing(members[0], family, 6);
  auto reference = gram_schmidt(members);
  for (std::size_t k = 0; k < 6; ++k) CHECK((own[k].amplitudes() - reference[k].amplitudes()).norm() < 1e-9);

  auto small = make_uniform_grid(-1, 1, 5);
  CHECK_THROWS_AS(basis_containing(grid_indicator(small, 2), FillerFamily::grid_indicators(), 6), DimensionError);
  CHECK_NOTHROW(basis_containing(grid_indicator(small, 2), FillerFamily::grid_indicators(), 5));
}

TEST_CASE("decompose simple states") {
  auto g = make_uniform_grid(-8, 8, 65);
  auto basis = basis_containing(gaussian_pulse(g, 0, 1), FillerFamily::matched_to_pulse(0, 1), 4);
  std::vector<SpectralFunction> x00{basis[0], basis[0]};
  auto dec = decompose(tensor_product_sdf(x00), basis);
  REQUIRE(dec.coefficients().size() == 1);
  CHECK(dec.coefficients().begin()->first == MultiIndex{0, 0});
  CHECK(std::abs(dec.coefficients().begin()->second - 1.0) < 1e-12);
  CHECK(std::abs(dec.occupation_norm() - 2.0) < 1e-12);

  std::vector<SpectralFunction> x01{basis[0], basis[1]}, x10{basis[1], basis[0]};
  auto a = tensor_product_sdf(x01);
  auto bell = a.with_tensor((a.tensor() + tensor_product_sdf(x10).tensor()) / std::sqrt(2.0));
  auto dec2 = decompose(bell, basis);
  REQUIRE(dec2.coefficients().size() == 1);
  CHECK(dec2.coefficients().begin()->first == MultiIndex{0, 1});
  auto occ = dec2.occupation_amplitudes();
  REQUIRE(occ.size() == 1);
  CHECK(occ.begin()->first == OccupationVector{1, 1, 0, 0});
  // normalized occupation amplitude of |1,1> is 1
  CHECK(std::abs(std::abs(occ.begin()->second) / std::sqrt(normalization_factor(bell).value) - 1.0) < 1e-12);
}

TEST_CASE("decompose matches brute-force projection on a 4-node grid") {
  std::mt19937_64 rng(17);
  auto g = make_uniform_grid(-1, 1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto basis = random_complete_basis(rng, g);
    auto sdf = JointSDF(g, {2}, oracle::random_vector(rng, 16)).normalized();
    auto dec = decompose(sdf, basis, {0.0, 1e9});
    const auto raw = oracle::raw_projection(basis.matrix(), sdf.tensor(), g.step());
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const complex expect = i == j ? raw(i, i) : raw(i, j) + raw(j, i);
        auto it = dec.coefficients().find({i, j});
        const complex got = it == dec.coefficients().end() ? complex{} : it->second;
        CHECK(std::abs(got - expect) < 1e-9);
      }
  }
}

TEST_CASE("decompose and reconstruct round trips") {
  std::mt19937_64 rng(21);
  auto g = make_uniform_grid(-1, 1, 5);
  for (int n = 1; n <= 3; ++n) {
    auto basis = random_complete_basis(rng, g);
    auto sym = random_symmetric(rng, g, n);
    auto dec = decompose(sym, basis);
    CHECK(dec.residual() < 1e-9);
    CHECK((reconstruct(dec).tensor() - sym.tensor()).norm() * std::sqrt(sym.cell_weight()) < 1e-9);
    // keys are nondecreasing
    for (const auto& [key, value] : dec.coefficients()) CHECK(std::is_sorted(key.begin(), key.end()));
    // decompose of the reconstruction reproduces the coefficients
    auto again = decompose(reconstruct(dec), basis);
    for (const auto& [key, value] : dec.coefficients()) CHECK(std::abs(again.coefficients().at(key) - value) < 1e-9);
  }

  // asymmetric input: reconstruction is the symmetric part
  const auto size = static_cast<Eigen::Index>(std::pow(5, 3));
  auto raw = JointSDF(g, {3}, oracle::random_vector(rng, size)).normalized();
  auto rec = reconstruct(decompose(raw, random_complete_basis(rng, g)));
  CHECK((rec.normalized().tensor() - symmetrize(raw).tensor()).norm() * std::sqrt(raw.cell_weight()) < 1e-9);

  ModeDecomposition empty(random_complete_basis(rng, g), 2, {});
  CHECK(reconstruct(empty).tensor().norm() == 0.0);
}

TEST_CASE("incomplete basis warns with the residual") {
  auto g = make_uniform_grid(-8, 8, 65);
  auto basis = basis_containing(gaussian_pulse(g, 0, 1), FillerFamily::matched_to_pulse(0, 1), 2);
  std::vector<SpectralFunction> far{gaussian_pulse(g, 4, 0.5), gaussian_pulse(g, 4, 0.5)};
  ScopedWarningCapture capture;
  auto dec = decompose(tensor_product_sdf(far), basis);
  CHECK(dec.residual() > 1e-3);
  REQUIRE(capture.messages().size() == 1);
  CHECK(capture.messages()[0].find("residual") != std::string::npos);
}

TEST_CASE("occupation norm is basis independent") {
  std::mt19937_64 rng(31);
  auto g = make_uniform_grid(-1, 1, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    auto sym = random_symmetric(rng, g, n);
    const double expect = normalization_factor(sym).value;
    auto b1 = random_complete_basis(rng, g);
    auto b2 = EigenBasis(g, FillerFamily::grid_indicators().members(g, 4));
    CHECK(std::abs(decompose(sym, b1).occupation_norm() - expect) < 1e-6);
    CHECK(std::abs(decompose(sym, b2).occupation_norm() - expect) < 1e-6);
  }
}

TEST_CASE("two-mode split") {
  auto g = make_uniform_grid(-8, 8, 161);
  auto phi = gaussian_pulse(g, 0, 1);
  auto self = two_mode_split(phi, phi);
  CHECK(self.perfect_overlap);
  CHECK(std::abs(self.lambda1 - 1.0) < 1e-12);
  CHECK(self.lambda0 == 0.0);

  auto left = rect_window(g, -6, -4);
  auto right = rect_window(g, 4, 6);
  auto orth = two_mode_split(left, right);
  CHECK(orth.lambda1 == complex(0.0, 0.0));
  CHECK(std::abs(orth.lambda0 - 1.0) < 1e-12);
  CHECK((orth.rest.amplitudes() - left.amplitudes()).norm() < 1e-12);

  // gaussian against a rect window whose edges sit halfway between nodes
  auto fine = make_uniform_grid(-8, 8, 1601);
  const double lo = -0.755, hi = 1.255;
  auto rect = rect_window(fine, lo, hi);
  phi = gaussian_pulse(fine, 0, 1);
  auto s = two_mode_split(phi, rect);
  CHECK(std::abs(std::norm(s.lambda1) + s.lambda0 * s.lambda0 - 1.0) < 1e-9);
  CHECK(std::abs(inner_product(s.desired, s.rest)) < 1e-9);
  CHECK((s.desired.scaled(s.lambda1) + s.rest.scaled(s.lambda0) - phi).norm() < 1e-9);
  // amplitude (2 pi)^(-1/4) exp(-w^2/4), window height 1/sqrt(hi - lo)
  const double integral = std::pow(2 * M_PI, -0.25) * std::sqrt(M_PI) * (std::erf(hi / 2) - std::erf(lo / 2));
  const double oracle_gamma = integral * integral / (hi - lo);
  CHECK(std::abs(std::norm(s.lambda1) - oracle_gamma) < 1e-4);
}

TEST_CASE("schmidt decomposition") {
  auto g = make_uniform_grid(-7, 7, 57);
  auto f = gaussian_pulse(g, 0, 1);
  auto h = gaussian_pulse(g, 0, 1, 9.0);
  REQUIRE(overlap_gamma(f, h) < 1e-12);

  std::vector<SpectralFunction> fh{f, h}, hf{h, f};
  auto sep = schmidt_decompose(tensor_product_sdf(fh, {1, 1}));
  REQUIRE(sep.coefficients.size() == 1);
  CHECK(std::abs(sep.coefficients[0] - 1.0) < 1e-9);
  CHECK(std::abs(sep.schmidt_number() - 1.0) < 1e-9);

  auto a = tensor_product_sdf(fh, {1, 1});
  auto bell = a.with_tensor((a.tensor() + tensor_product_sdf(hf, {1, 1}).tensor()) / std::sqrt(2.0));
  auto s2 = schmidt_decompose(bell);
  REQUIRE(s2.coefficients.size() == 2);
  for (double c : s2.coefficients) CHECK(std::abs(c - 1 / std::sqrt(2.0)) < 1e-9);

  for (double c : {-0.9, -0.6, 0.0, 0.4}) {
    auto joint = gaussian_biphoton(g, 0, 1, c);
    auto s = schmidt_decompose(joint);
    // oracle: SVD of the raw sampled matrix times the cell weight
    const auto d = static_cast<Eigen::Index>(g.points());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = joint.tensor()[i * d + j] * g.step();
    Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    double sum2 = 0.0;
    for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
      CHECK(std::abs(s.coefficients[k] - sv[static_cast<Eigen::Index>(k)]) < 1e-9);
      if (k) CHECK(s.coefficients[k] <= s.coefficients[k - 1]);
      sum2 += s.coefficients[k] * s.coefficients[k];
    }
    CHECK(std::abs(sum2 - 1.0) < 1e-9);
    CHECK(std::abs(s.schmidt_number() - gaussian_schmidt_number(c)) < 1e-6);
    for (std::size_t i = 0; i < std::min<std::size_t>(4, s.modes_a.size()); ++i)
      for (std::size_t j = 0; j < std::min<std::size_t>(4, s.modes_a.size()); ++j) {
        CHECK(std::abs(inner_product(s.modes_a[i], s.modes_a[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);
        CHECK(std::abs(inner_product(s.modes_b[i], s.modes_b[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);
      }
  }
  CHECK_THROWS_AS(schmidt_decompose(tensor_product_sdf(fh)), UsageError);
}

TEST_CASE("schmidt coefficients of random biphotons square-sum to 1") {
  std::mt19937_64 rng(44);
  auto g = make_uniform_grid(-1, 1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto joint = JointSDF(g, {1, 1}, oracle::random_vector(rng, 36)).normalized();
    double sum2 = 0.0;
    for (double c : schmidt_decompose(joint).coefficients) sum2 += c * c;
    CHECK(std::abs(sum2 - 1.0) < 1e-9);
  }
}
