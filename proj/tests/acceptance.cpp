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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specmodes/diagnostics.hpp"
#include "specmodes/specmodes.hpp"

using namespace specmodes;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    ScopedWarningCapture quiet;
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s %d %s:%s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.str().c_str(), secs);
  std::fflush(stdout);
}

SpectralFunction random_function(std::mt19937_64& rng, const FrequencyGrid& g) {
  return SpectralFunction(g, oracle::random_vector(rng, static_cast<Eigen::Index>(g.points()))).normalized();
}

OccupationState random_two_port_state(std::mt19937_64& rng, int cap) {
  auto slots = mode_slots("A", 2);
  auto b = mode_slots("B", 2);
  slots.insert(slots.end(), b.begin(), b.end());
  std::normal_distribution<double> g;
  AmplitudeMap amps;
  for (int a0 = 0; a0 <= cap; ++a0)
    for (int a1 = 0; a0 + a1 <= cap; ++a1)
      for (int b0 = 0; a0 + a1 + b0 <= cap; ++b0)
        for (int b1 = 0; a0 + a1 + b0 + b1 <= cap; ++b1) amps[{a0, a1, b0, b1}] = complex(g(rng), g(rng));
  return OccupationState(slots, amps, cap).normalized();
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const FrequencyGrid g64 = make_uniform_grid(-8, 8, 64);

  report(1, "four-photon interference, 64-node grid", [&](Verdict& v) {
    const auto t0 = Clock::now();
    double worst_sweep = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double gamma = k / 10.0;
      auto [p1, p2] = pair_with_overlap(g64, 0, 1, gamma);
      const auto r = four_photon_interference(p1, p2);
      if (k == 0) {
        v.detail << " P4A(0) = " << r.p_4a;
        v.require(std::abs(r.p_4a - 0.25) <= 1e-6, "P4A(gamma=0) = 1/4 within 1e-6");
      }
      if (k == 10) {
        v.detail << ", P4A(1) = " << r.p_4a;
        v.require(std::abs(r.p_4a - 0.375) <= 1e-6, "P4A(gamma=1) = 3/8 within 1e-6");
      }
      worst_sweep = std::max(worst_sweep, std::abs(r.p_4a - four_photon_closed_form(gamma)));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    v.detail << ", max |P4A - (gamma + 1/(1+gamma))/4| over 11 gammas = " << worst_sweep;
    v.require(worst_sweep <= 1e-6, "sweep matches (gamma + 1/(1+gamma))/4 within 1e-6");
    v.require(secs < 10.0, "runtime < 10 s");
  });

  report(2, "pair normalization N4 vs 4(1+g+g^2), 10 random pairs", [&](Verdict& v) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const FrequencyGrid g = make_uniform_grid(-8, 8, 24);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      auto p1 = gaussian_pulse(g, u(rng) - 0.5, 0.8 + 0.6 * u(rng), 2 * u(rng) - 1);
      auto p2 = gaussian_pulse(g, u(rng) - 0.5, 0.8 + 0.6 * u(rng), 2 * u(rng) - 1);
      const double gamma = overlap_gamma(p1, p2);
      std::vector<SpectralFunction> f{p1, p1, p2, p2};
      const double n4 = normalization_factor(tensor_product_sdf(f)).value;
      worst = std::max(worst, std::abs(n4 - 4 * (1 + gamma + gamma * gamma)));
    }
    v.detail << " max |N4 - 4(1+g+g^2)| = " << worst;
    v.require(worst <= 1e-6, "within 1e-6");
  });

  report(3, "two-photon coincidence", [&](Verdict& v) {
    double worst = 0.0;
    const auto f = gaussian_pulse(g64, 0, 1);
    for (int k = 0; k <= 50; ++k) {
      const double tau = 0.1 * k;
      const auto r = hom_separable(f, gaussian_pulse(g64, 0, 1, tau));
      worst = std::max(worst, std::abs(r.p_c - 0.5 * (1 - std::exp(-tau * tau))));
      worst = std::max(worst, std::abs(r.p_c_simulated - 0.5 * (1 - std::exp(-tau * tau))));
    }
    v.detail << " delay sweep max error " << worst;
    v.require(worst <= 1e-4, "delay sweep within 1e-4");

    const FrequencyGrid g = make_uniform_grid(-7, 7, 36);
    const EigenBasis full(g, FillerFamily::grid_indicators().members(g, g.points()));
    const auto sym = hom_entangled(gaussian_biphoton(g, 0, 1, -0.6), full);
    v.detail << ", symmetric entangled P_c = " << sym.p_c;
    v.require(sym.p_c < 1e-9 && std::abs(sym.p_c_simulated) < 1e-9, "exchange-symmetric P_c < 1e-9");

    const auto basis = basis_containing(gaussian_pulse(g, 0, 1), FillerFamily::matched_to_pulse(0, 1), 3);
    std::vector<SpectralFunction> x12{basis[1], basis[2]};
    const auto distinct = hom_entangled(tensor_product_sdf(x12, {1, 1}), basis);
    v.detail << ", lambda_12 = 1 gives P_c = " << distinct.p_c;
    v.require(std::abs(distinct.p_c - 0.5) < 1e-12 && std::abs(distinct.p_c_simulated - 0.5) < 1e-12,
              "lambda_12 = 1 gives 1/2");
  });

  report(4, "normalization bounds and bosonic oracle", [&](Verdict& v) {
    std::mt19937_64 rng(4);
    int bound_violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 1 + trial % 3;
      const FrequencyGrid g = make_uniform_grid(-2, 2, 2 + trial % 15);
      std::vector<SpectralFunction> factors;
      for (int k = 0; k < n; ++k) factors.push_back(random_function(rng, g));
      const double value = normalization_factor(tensor_product_sdf(factors)).value;
      if (value < 1 - 1e-9 || value > oracle::factorial(n) + 1e-9) ++bound_violations;
    }
    v.detail << " product SDFs outside [1, n!]: " << bound_violations << "/1000";
    v.require(bound_violations == 0, "1 <= N <= n! for random SDFs");

    double worst_sym = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 2;
      const FrequencyGrid g = make_uniform_grid(-1, 1, 2 + trial % 7);
      const auto size = static_cast<Eigen::Index>(std::pow(g.points(), n));
      auto sym = symmetrize(JointSDF(g, {n}, oracle::random_vector(rng, size)).normalized());
      worst_sym = std::max(worst_sym, std::abs(normalization_factor(sym).value - oracle::factorial(n)));
    }
    v.detail << ", symmetrized max |N - n!| = " << worst_sym;
    v.require(worst_sym <= 1e-6, "symmetrized inputs give n!");

    double worst_oracle = 0.0;
    const std::vector<std::vector<int>> partitions{{1}, {2}, {3}, {1, 1}, {2, 1}, {1, 1, 1}};
    for (int trial = 0; trial < 300; ++trial) {
      const auto& part = partitions[trial % partitions.size()];
      const FrequencyGrid g = make_uniform_grid(-1, 1, 2 + trial % 3);
      int n = 0;
      std::vector<int> modes;
      for (std::size_t m = 0; m < part.size(); ++m)
        for (int k = 0; k < part[m]; ++k, ++n) modes.push_back(static_cast<int>(m));
      const auto size = static_cast<Eigen::Index>(std::pow(g.points(), n));
      auto sdf = JointSDF(g, part, oracle::random_vector(rng, size)).normalized();
      const double brute = oracle::bosonic_norm(sdf.tensor(), static_cast<int>(g.points()), modes, g.step());
      worst_oracle = std::max(worst_oracle, std::abs(normalization_factor(sdf).value - brute));
    }
    v.detail << ", bosonic expansion max deviation = " << worst_oracle;
    v.require(worst_oracle <= 1e-9, "brute-force agreement within 1e-9");
  });

  report(5, "spectral filter", [&](Verdict& v) {
    auto [p1, p2] = pair_with_overlap(g64, 0, 1, 0.5);
    std::vector<SpectralFunction> three(3, p1);
    const auto rho = spectral_filter(tensor_product_sdf(three), p2);
    const double expect[4] = {0.125, 0.375, 0.375, 0.125};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(rho(i, i) - expect[i]));
    v.detail << " n = 3 diagonal max error " << worst;
    v.require(rho.dimension() == 4 && worst <= 1e-9, "diagonal (0.125, 0.375, 0.375, 0.125) within 1e-9");
    double worst_trace = 0.0;
    const FrequencyGrid g32 = make_uniform_grid(-8, 8, 32);
    for (int n = 1; n <= 4; ++n) {
      for (double gamma : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
        auto [a, b] = pair_with_overlap(g32, 0, 1, gamma);
        std::vector<SpectralFunction> f(n, a);
        worst_trace = std::max(worst_trace, std::abs(spectral_filter(tensor_product_sdf(f), b).trace() - 1.0));
      }
    }
    v.detail << ", max |trace - 1| = " << worst_trace;
    v.require(worst_trace <= 1e-9, "unit trace");
  });

  report(6, "homodyne observation", [&](Verdict& v) {
    const auto pulse = gaussian_pulse(g64, 0, 1);
    const std::vector<complex> weights{0.6, complex(0.0, 0.48), 0.64};
    Eigen::VectorXcd pure(3);
    pure << weights[0], weights[1], weights[2];
    const auto matched = homodyne_observe(weights, pulse, pulse);
    const double fid = matched.fidelity(pure);
    v.detail << " matched fidelity " << fid;
    v.require(std::abs(fid - 1.0) <= 1e-9, "perfect match fidelity 1");
    auto [p1, orth] = pair_with_overlap(g64, 0, 1, 0.0);
    const auto dark = homodyne_observe(weights, p1, orth);
    Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(3, 3);
    vac(0, 0) = 1.0;
    const double err = (dark.matrix() - vac).cwiseAbs().maxCoeff();
    v.detail << ", orthogonal probe distance from vacuum " << err;
    v.require(err <= 1e-9, "orthogonal probe sees vacuum");
  });

  report(7, "conditional Fock preparation, 20 random entangled sources", [&](Verdict& v) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_residual = 0.0, worst_mode = 0.0;
    int verdicts = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const double corr = -0.2 - 0.7 * u(rng);
      auto joint = gaussian_biphoton(g64, 0.4 * (u(rng) - 0.5), 0.8 + 0.4 * u(rng), corr, 0.6 * (u(rng) - 0.5));
      const auto basis = schmidt_basis(joint, rect_window(g64, -0.5, 0.5), 8);
      const PDCSource src{std::polar(0.1, 6.283185307179586 * u(rng)), joint, false, 3};
      const auto r = conditional_fock(src, 1 + trial % 3, basis);
      // independent marginal: sum_j lambda_0j xi_j by direct quadrature
      const auto raw = oracle::raw_projection(basis.matrix(), joint.tensor(), g64.step());
      const SpectralFunction expected = basis.synthesize(raw.row(0).transpose()).normalized();
      const complex ov = inner_product(expected, *r.mode);
      const double mode_err = (*r.mode - expected.scaled(ov / std::abs(ov))).norm();
      worst_residual = std::max(worst_residual, r.fock_residual);
      worst_mode = std::max(worst_mode, mode_err);
      verdicts += r.fock_verdict ? 1 : 0;
    }
    v.detail << " Fock verdicts " << verdicts << "/20, max residual " << worst_residual << ", max mode error "
             << worst_mode;
    v.require(verdicts == 20 && worst_residual < 1e-6, "Fock residual < 1e-6");
    v.require(worst_mode <= 1e-6, "mode matches the xi_0 marginal within 1e-6");
  });

  report(8, "kitten preparation", [&](Verdict& v) {
    const auto mode = gaussian_pulse(g64, 0, 1);
    const auto sep = gaussian_biphoton(g64, 0, 1, 0.0);
    const auto ks = kitten_preparation(PDCSource{0.1, sep, true, 3}, schmidt_basis(sep, mode, 4));
    v.detail << " separable purity " << ks.purity;
    v.require(ks.success && std::abs(ks.purity - 1.0) <= 1e-6, "separable purity 1 within 1e-6");
    const auto joint = gaussian_biphoton(g64, 0, 1, -0.6);
    const auto ke = kitten_preparation(PDCSource{0.1, joint, true, 3}, schmidt_basis(joint, rect_window(g64, -0.25, 0.25), 8));
    v.detail << ", anti-correlated vacuum mixing " << ke.vacuum_mixing_fraction;
    v.require(ke.success && ke.vacuum_mixing_fraction > 1e-3, "vacuum mixing > 1e-3");
  });

  report(9, "property suites", [&](Verdict& v) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double bs = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const auto s = random_two_port_state(rng, trial % 2 ? 6 : 4);
      const double t = u(rng);
      const auto out = beamsplitter(s, "A", "B", t);
      bs = std::max(bs, std::abs(out.norm_squared() - 1.0));
      const auto back = beamsplitter(out, "A", "B", t);
      bs = std::max(bs, std::sqrt(back.plus(s.scaled(-1.0)).norm_squared()));
    }
    v.detail << " beamsplitter " << bs;
    v.require(bs <= 1e-9, "beamsplitter unitary");

    double dm = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      HomodyneInput in;
      const int top = 1 + trial % 4;
      Eigen::VectorXcd c = oracle::random_vector(rng, top + 1).normalized();
      const complex l1 = std::polar(std::sqrt(u(rng)), 6.28 * u(rng));
      for (int n = 0; n <= top; ++n) {
        in.weights.push_back(c[n]);
        in.split.push_back(fock_split_amplitudes(n, l1, std::sqrt(1 - std::norm(l1))));
      }
      const auto rho = homodyne_observe(in);
      dm = std::max({dm, std::abs(rho.trace() - 1.0), rho.hermiticity_error(), -rho.min_eigenvalue()});
      const auto f = spectral_filter(random_two_port_state(rng, 3), "A", trial % 2);
      dm = std::max({dm, std::abs(f.trace() - 1.0), f.hermiticity_error(), -f.min_eigenvalue()});
    }
    v.detail << ", density operators " << dm;
    v.require(dm <= 1e-9, "density operators Hermitian, unit trace, positive");

    double ortho = 0.0;
    const auto joint = gaussian_biphoton(g64, 0, 1, -0.6);
    ortho = std::max(ortho, schmidt_basis(joint, rect_window(g64, -0.5, 0.5), 10).orthonormality_error());
    ortho = std::max(ortho, basis_containing(rect_window(g64, -1, 1), FillerFamily::matched_to_pulse(0, 1), 20).orthonormality_error());
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<SpectralFunction> seeds;
      for (int k = 0; k < 12; ++k) seeds.push_back(random_function(rng, g64));
      ortho = std::max(ortho, gram_schmidt(seeds).orthonormality_error());
    }
    v.detail << ", orthonormality " << ortho;
    v.require(ortho <= 1e-9, "bases orthonormal");

    double rt = 0.0;
    const FrequencyGrid g = make_uniform_grid(-1, 1, 5);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + trial % 3;
      std::vector<SpectralFunction> seeds;
      for (int k = 0; k < 5; ++k) seeds.push_back(random_function(rng, g));
      const auto basis = gram_schmidt(seeds);
      const auto size = static_cast<Eigen::Index>(std::pow(5, n));
      auto sym = symmetrize(JointSDF(g, {n}, oracle::random_vector(rng, size)).normalized());
      const auto dec = decompose(sym, basis);
      rt = std::max(rt, (reconstruct(dec).tensor() - sym.tensor()).norm() * std::sqrt(sym.cell_weight()));
    }
    v.detail << ", round trip " << rt;
    v.require(rt <= 1e-9, "decompose/reconstruct round trip");
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    v.require(secs < 60.0, "suite < 60 s");
  });

  std::printf("%d of 9 criteria failed (%.2f s total)\n", failures,
              std::chrono::duration<double>(Clock::now() - start).count());
  return failures;
}
