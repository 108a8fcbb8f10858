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

#include "specmodes/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "specmodes/diagnostics.hpp"
#include "specmodes/errors.hpp"
#include "specmodes/optics.hpp"
#include "specmodes/states.hpp"
#include "tensor_ops.hpp"

namespace specmodes {
namespace {

constexpr double kHalf = 0.70710678118654752440;

void require_normalized(const SpectralFunction& f, const char* what) {
  if (!f.is_normalized()) {
    std::ostringstream msg;
    msg << what << " must be normalized (norm " << f.norm() << ")";
    throw UsageError(msg.str());
  }
}

LinearMode linear_mode(const Eigen::VectorXcd& coeffs, std::size_t offset) {
  LinearMode out;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != complex{}) out.emplace_back(offset + static_cast<std::size_t>(i), coeffs[i]);
  }
  return out;
}

std::vector<Slot> two_mode_slots(std::size_t d) {
  auto slots = mode_slots("A", static_cast<int>(d));
  auto b = mode_slots("B", static_cast<int>(d));
  slots.insert(slots.end(), b.begin(), b.end());
  return slots;
}

// Visits nondecreasing index tuples of length n over [0, d).
void for_each_sorted_key(std::size_t d, int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> key(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    fn(key);
    return;
  }
  while (true) {
    fn(key);
    int pos = n - 1;
    while (pos >= 0 && key[static_cast<std::size_t>(pos)] == static_cast<int>(d) - 1) --pos;
    if (pos < 0) return;
    const int next = key[static_cast<std::size_t>(pos)] + 1;
    for (int k = pos; k < n; ++k) key[static_cast<std::size_t>(k)] = next;
  }
}

// Re-expresses a single-mode state in a new basis; u(i, j) = <p_i, xi_j>.
AmplitudeMap rotate_modes(const OccupationState& state, const Eigen::MatrixXcd& u) {
  const std::size_t d = state.slots().size();
  AmplitudeMap out;
  for (int n = 0; n <= state.max_total_photons(); ++n) {
    const Eigen::VectorXcd coeff = sector_tensor(state, n);
    if (coeff.norm() == 0.0) continue;
    const Eigen::VectorXcd rotated = detail::multilinear_transform(coeff, d, n, u);
    for_each_sorted_key(d, n, [&](const std::vector<int>& key) {
      std::size_t flat = 0;
      for (int i : key) flat = flat * d + static_cast<std::size_t>(i);
      const complex c = rotated[static_cast<Eigen::Index>(flat)];
      if (std::abs(c) < 1e-300) return;
      Occupation occ(d, 0);
      for (int i : key) ++occ[static_cast<std::size_t>(i)];
      double fact = 1.0;
      for (int m : occ) fact *= detail::factorial(m);
      out.emplace(std::move(occ), c * std::sqrt(fact) * detail::factorial(n) / fact);
    });
  }
  return out;
}

// Unitary whose rows are the coordinates of a basis starting with `probe`,
// arranged so that u(i, j) = <p_i, xi_j>.
Eigen::MatrixXcd probe_rotation(const EigenBasis& basis, const SpectralFunction& probe) {
  const Eigen::VectorXcd v = basis.coefficients(probe);
  if (std::abs(v.norm() - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "probe mode lies outside the span of the basis (captured norm " << v.norm() << ")";
    throw UsageError(msg.str());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v.normalized());
  Eigen::MatrixXcd q = qr.householderQ();
  q.col(0) = v.normalized();
  return q.adjoint();
}

// Coefficients of the n-photon sectors of a single-mode state that are Fock
// states in one common mode; returns the worst residual.
double common_fock_residual(const OccupationState& state) {
  const std::size_t d = state.slots().size();
  std::optional<Eigen::VectorXcd> reference;
  double worst = 0.0;
  const double total = std::sqrt(state.norm_squared());
  for (int n = 1; n <= state.max_total_photons(); ++n) {
    const Eigen::VectorXcd coeff = sector_tensor(state, n);
    if (coeff.norm() <= 1e-12 * total) continue;
    const FockFactor ff = extract_fock_factor(coeff, d, n);
    worst = std::max(worst, ff.residual);
    if (!reference) {
      reference = ff.factor;
    } else {
      worst = std::max(worst, 1.0 - std::abs(reference->dot(ff.factor)));
    }
  }
  return worst;
}

// Coefficient of x^n in prod_k sum_m (s_k^2 x)^m w(m).
double pair_term_norm(const Eigen::VectorXd& singular, int n, bool degenerate) {
  std::vector<double> poly(static_cast<std::size_t>(n) + 1, 0.0);
  poly[0] = 1.0;
  for (Eigen::Index k = 0; k < singular.size(); ++k) {
    const double s2 = singular[k] * singular[k];
    std::vector<double> next(poly.size(), 0.0);
    for (int a = 0; a <= n; ++a) {
      if (poly[static_cast<std::size_t>(a)] == 0.0) continue;
      double term = 1.0;
      for (int m = 0; a + m <= n; ++m) {
        double w = 1.0;
        if (degenerate) w = detail::factorial(2 * m) / (detail::factorial(m) * detail::factorial(m));
        next[static_cast<std::size_t>(a + m)] += poly[static_cast<std::size_t>(a)] * term * w;
        term *= s2;
      }
    }
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(n)];
}

}  // namespace

HOMResult hom_separable(const SpectralFunction& phi, const SpectralFunction& varphi) {
  require_normalized(phi, "first photon");
  require_normalized(varphi, "second photon");
  const TwoModeSplit split = two_mode_split(varphi, phi);
  HOMResult out;
  out.gamma = std::min(1.0, std::norm(split.lambda1));
  out.p_c = 0.5 * (1.0 - out.gamma);

  OccupationState state(two_mode_slots(2), 2);
  state = apply_creation(state, {{0, 1.0}});
  state = apply_creation(state, {{2, split.lambda1}, {3, split.lambda0}});
  state = beamsplitter(state, "A", "B", kHalf);
  out.p_c_simulated = postselect(state, "A", 1).probability;
  return out;
}

HOMResult hom_entangled(const JointSDF& biphoton, const EigenBasis& basis) {
  if (biphoton.partition() != std::vector<int>{1, 1}) {
    throw UsageError("entangled HOM needs one photon in each input port");
  }
  Eigen::MatrixXcd lambda = lambda_matrix(biphoton, basis);
  HOMResult out;
  out.captured_norm = lambda.squaredNorm();
  if (out.captured_norm == 0.0) throw NumericalError("biphoton has no weight in the basis");
  if (1.0 - out.captured_norm > 1e-6) {
    std::ostringstream msg;
    msg << "basis captures only " << out.captured_norm << " of the biphoton norm";
    warn(msg.str());
  }
  lambda /= std::sqrt(out.captured_norm);
  out.p_c = 0.25 * (lambda - lambda.transpose()).squaredNorm();
  out.gamma = 1.0 - 2.0 * out.p_c;

  const std::size_t d = basis.size();
  PairOperator op;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const complex l = lambda(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (l != complex{}) op.emplace_back(i, d + j, l);
    }
  }
  OccupationState state = apply_pair_creation(OccupationState(two_mode_slots(d), 2), op);
  state = beamsplitter(state, "A", "B", kHalf);
  out.p_c_simulated = postselect(state, "A", 1).probability;
  return out;
}

double four_photon_closed_form(double gamma) { return 0.25 * (gamma + 1.0 / (1.0 + gamma)); }

FourPhotonResult four_photon_interference(const SpectralFunction& phi1, const SpectralFunction& phi2) {
  require_normalized(phi1, "phi1");
  require_normalized(phi2, "phi2");
  FourPhotonResult out;
  out.gamma = std::min(1.0, overlap_gamma(phi1, phi2));

  const std::vector<SpectralFunction> pair{phi1, phi2};
  const std::vector<SpectralFunction> quad{phi1, phi1, phi2, phi2};
  out.n2 = product_normalization_factor(pair);
  out.n4 = product_normalization_factor(quad);
  out.p_4a_permutation = out.n4 / (16.0 * out.n2 * out.n2);
  out.p_4a_closed = four_photon_closed_form(out.gamma);
  out.n4_closed = 4.0 * (1.0 + out.gamma + out.gamma * out.gamma);

  const EigenBasis basis = gram_schmidt(pair);
  const std::size_t d = basis.size();
  const Eigen::VectorXcd c1 = basis.coefficients(phi1);
  const Eigen::VectorXcd c2 = basis.coefficients(phi2);
  OccupationState state(two_mode_slots(d), 4);
  state = apply_creation(state, linear_mode(c1, 0));
  state = apply_creation(state, linear_mode(c2, 0));
  state = apply_creation(state, linear_mode(c1, d));
  state = apply_creation(state, linear_mode(c2, d));
  state = beamsplitter(state, "A", "B", kHalf);
  // postselect divides by <psi|psi> = N2^2, the input normalization.
  out.p_4a = postselect(state, "A", 4).probability;
  return out;
}

std::pair<SpectralFunction, SpectralFunction> pair_with_overlap(const FrequencyGrid& grid, double center,
                                                                double width, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("overlap gamma must lie in [0, 1]");
  SpectralFunction phi1 = gaussian_pulse(grid, center, width);
  const SpectralFunction hg1 = hermite_gauss(grid, center, std::sqrt(2.0) * width, 1);
  const SpectralFunction chi = (hg1 - phi1.scaled(inner_product(phi1, hg1))).normalized();
  SpectralFunction phi2 = phi1.scaled(std::sqrt(gamma)) + chi.scaled(std::sqrt(1.0 - gamma));
  return {std::move(phi1), std::move(phi2)};
}

JointSDF gaussian_biphoton(const FrequencyGrid& grid, double center, double width, double correlation,
                           double offset) {
  if (!(std::abs(correlation) < 1.0)) throw ConfigError("biphoton correlation must satisfy |c| < 1");
  if (!(width > 0.0)) throw ConfigError("biphoton width must be positive");
  const double denom = width * width * (1.0 - correlation * correlation);
  auto fn = [&](std::span<const double> w) -> complex {
    const double x1 = w[0] - center - 0.5 * offset;
    const double x2 = w[1] - center + 0.5 * offset;
    const double q = (x1 * x1 - 2.0 * correlation * x1 * x2 + x2 * x2) / denom;
    return std::exp(-0.25 * q);
  };
  return JointSDF::sample(grid, {1, 1}, fn).normalized();
}

double gaussian_schmidt_number(double correlation) { return 1.0 / std::sqrt(1.0 - correlation * correlation); }

PDCState pdc_state(const PDCSource& source, const EigenBasis& basis) {
  if (source.joint.partition() != std::vector<int>{1, 1}) {
    throw UsageError("a down-conversion source needs a (1,1) joint SDF");
  }
  if (source.n_max < 0) throw ConfigError("pair truncation n_max must be nonnegative");
  if (std::abs(source.coupling) > 0.3) {
    warn("coupling above 0.3: the truncated pair expansion assumes low gain");
  }
  const std::size_t d = basis.size();
  Eigen::MatrixXcd lambda = lambda_matrix(source.joint, basis);
  const double captured = lambda.squaredNorm();
  if (1.0 - captured > 1e-3) {
    std::ostringstream msg;
    msg << "basis captures only " << captured << " of the joint SDF norm";
    warn(msg.str());
  }

  PairOperator op;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const complex l = lambda(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (l != complex{}) op.emplace_back(i, source.degenerate ? j : d + j, l);
    }
  }
  std::vector<Slot> slots = source.degenerate ? mode_slots("A", static_cast<int>(d)) : two_mode_slots(d);
  OccupationState term(slots, 2 * source.n_max);
  OccupationState total = term;
  for (int n = 1; n <= source.n_max; ++n) {
    term = apply_pair_creation(term, op).scaled(source.coupling / static_cast<double>(n));
    total = total.plus(term);
  }

  const Eigen::MatrixXcd pair_matrix = source.degenerate ? Eigen::MatrixXcd(0.5 * (lambda + lambda.transpose())) : lambda;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair_matrix);
  const double tail = std::pow(std::norm(source.coupling), source.n_max + 1) *
                      pair_term_norm(svd.singularValues(), source.n_max + 1, source.degenerate);
  const double kept = total.norm_squared();

  PDCState out{total.normalized(), std::move(lambda), tail / kept, captured};
  if (out.truncation_error > 1e-3) {
    std::ostringstream msg;
    msg << "pair truncation at n_max = " << source.n_max << " omits a relative norm of " << out.truncation_error;
    warn(msg.str());
  }
  return out;
}

SpectralFunction principal_marginal_mode(const JointSDF& joint, const EigenBasis& basis) {
  const Eigen::MatrixXcd lambda = lambda_matrix(joint, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(lambda * lambda.adjoint());
  Eigen::VectorXcd u = eig.eigenvectors().col(eig.eigenvectors().cols() - 1);
  u /= canonical_phase(u);
  return basis.synthesize(u.normalized());
}

EigenBasis schmidt_basis(const JointSDF& joint, const SpectralFunction& detector, std::size_t size) {
  if (size == 0) throw DimensionError("requested basis size must be positive");
  const SchmidtDecomposition schmidt = schmidt_decompose(joint);
  std::vector<SpectralFunction> seeds{detector};
  for (std::size_t k = 0; k < schmidt.coefficients.size(); ++k) {
    seeds.push_back(schmidt.modes_a[k]);
    seeds.push_back(schmidt.modes_b[k]);
  }
  // Pad with Hermite-Gauss functions matched to the detector's centroid and width.
  const Eigen::VectorXd intensity = detector.amplitudes().cwiseAbs2() * detector.grid().weight();
  const Eigen::VectorXd nodes = detector.grid().nodes();
  const double center = intensity.dot(nodes) / intensity.sum();
  // A detector on a single node has zero spread; never go below one step.
  const double spread = std::max(detector.grid().step(),
                                 std::sqrt(intensity.dot((nodes.array() - center).square().matrix()) / intensity.sum()));
  for (std::size_t k = 0; k < size; ++k) {
    seeds.push_back(hermite_gauss(detector.grid(), center, std::sqrt(2.0) * spread, static_cast<int>(k)));
  }
  const EigenBasis full = gram_schmidt(seeds);
  if (full.size() < size) {
    std::ostringstream msg;
    msg << "requested a basis of " << size << " functions but the source spans only " << full.size();
    throw DimensionError(msg.str());
  }
  std::vector<SpectralFunction> kept(full.functions().begin(), full.functions().begin() + static_cast<std::ptrdiff_t>(size));
  kept.front() = detector;
  return EigenBasis(detector.grid(), std::move(kept), 1e-8);
}

ConditionedPreparationResult kitten_preparation(const PDCSource& source, const EigenBasis& basis,
                                                const KittenOptions& options) {
  if (!source.degenerate) throw UsageError("kitten preparation needs a degenerate source");
  const double eta = options.reflectivity;
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("reflectivity must lie in [0, 1]");

  ConditionedPreparationResult out;
  const PDCState pdc = pdc_state(source, basis);
  out.truncation_error = pdc.truncation_error;
  const std::size_t d = basis.size();
  const OccupationState split =
      beamsplitter(pdc.state.extended(mode_slots("B", static_cast<int>(d))), "A", "B", std::sqrt(1.0 - eta));
  const auto heralded = postselect(split, "B", 0, 1);
  out.probability = heralded.probability;
  if (!heralded.success()) {
    warn("heralding probability is zero; no photon reaches the detector mode");
    return out;
  }
  out.success = true;
  const OccupationEnsemble& ensemble = *heralded.state;
  out.ensemble_purity = ensemble.purity();

  const SpectralFunction probe = options.probe ? *options.probe : principal_marginal_mode(source.joint, basis);
  const Eigen::MatrixXcd rotation = probe_rotation(basis, probe);
  std::vector<AmplitudeMap> rotated;
  for (std::size_t b = 0; b < ensemble.branches().size(); ++b) {
    rotated.push_back(rotate_modes(ensemble.branch_state(b), rotation));
  }
  DensityOperator observed =
      reduce_to_slot(OccupationEnsemble(ensemble.slots(), std::move(rotated), ensemble.truncation()), 0);
  observed.validate(1e-9);
  out.purity = observed.purity();
  out.vacuum_mixing_fraction = std::real(observed(0, 0));

  const OccupationState dominant = ensemble.branch_state(ensemble.dominant_branch());
  out.state = dominant.normalized();
  out.fock_residual = common_fock_residual(*out.state);
  out.fock_verdict = out.fock_residual <= options.fock_tol;

  // Leading-order expression: sum_n c^n/(n-1)! (sum_j l_0j A_j)(sum l_ij A_i A_j)^(n-1)|0>.
  PairOperator op;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const complex l = pdc.lambda(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (l != complex{}) op.emplace_back(i, j, l);
    }
  }
  const LinearMode first = linear_mode(pdc.lambda.row(0).transpose(), 0);
  OccupationState pairs(mode_slots("A", static_cast<int>(d)), 2 * source.n_max);
  OccupationState approx(pairs.slots(), AmplitudeMap{}, 2 * source.n_max);
  complex coeff = source.coupling;
  for (int n = 1; n <= source.n_max; ++n) {
    approx = approx.plus(apply_creation(pairs, first).scaled(coeff));
    pairs = apply_pair_creation(pairs, op);
    coeff *= source.coupling / static_cast<double>(n);
  }
  if (approx.norm_squared() > 0.0) {
    out.leading_order_fidelity = std::norm(approx.normalized().inner(*out.state));
  }

  out.observed = std::move(observed);
  if (options.subtract_baseline) {
    const std::vector<SpectralFunction> factors{probe, probe};
    PDCSource baseline{source.coupling, tensor_product_sdf(factors, {1, 1}), true, source.n_max};
    KittenOptions base_options = options;
    base_options.probe = probe;
    base_options.subtract_baseline = false;
    const auto base = kitten_preparation(baseline, basis, base_options);
    if (base.success) out.vacuum_mixing_fraction -= std::real((*base.observed)(0, 0));
  }
  return out;
}

ConditionedPreparationResult conditional_fock(const PDCSource& source, int m, const EigenBasis& basis,
                                              double fock_tol) {
  if (source.degenerate) throw UsageError("conditional Fock preparation needs a non-degenerate source");
  if (m < 0) throw ConfigError("heralded photon number must be nonnegative");
  if (m > source.n_max) throw ConfigError("heralded photon number exceeds the pair truncation n_max");

  // One extra pair order measures what the low-gain branch leaves out.
  PDCSource generator = source;
  generator.n_max = std::max(source.n_max, m + 1);
  const PDCState pdc = pdc_state(generator, basis);
  const std::size_t d = basis.size();

  ConditionedPreparationResult out;
  out.truncation_error = pdc.truncation_error;
  const auto heralded = postselect(pdc.state, "A", 0, m);
  out.probability = heralded.probability;
  if (!heralded.success()) {
    warn("heralding probability is zero");
    return out;
  }
  out.success = true;
  out.ensemble_purity = heralded.state->purity();

  // Branch with every other A eigenmode empty: exactly the n = m pair term.
  AmplitudeMap branch;
  double branch_norm = 0.0;
  for (const auto& [occ, amp] : pdc.state.amplitudes()) {
    if (occ[0] != m) continue;
    if (std::any_of(occ.begin() + 1, occ.begin() + static_cast<std::ptrdiff_t>(d), [](int k) { return k != 0; })) {
      continue;
    }
    branch.emplace(Occupation(occ.begin() + static_cast<std::ptrdiff_t>(d), occ.end()), amp);
    branch_norm += std::norm(amp);
  }
  out.neglected_fraction = std::max(0.0, 1.0 - branch_norm / heralded.probability);
  if (out.neglected_fraction > 1e-2) {
    std::ostringstream msg;
    msg << "terms beyond the low-gain approximation carry " << out.neglected_fraction
        << " of the conditional norm";
    warn(msg.str());
  }
  const OccupationState b_state =
      OccupationState(mode_slots("B", static_cast<int>(d)), std::move(branch), pdc.state.truncation()).normalized();
  out.purity = OccupationEnsemble(b_state).purity();
  out.state = b_state;

  if (m == 0) {
    out.fock_verdict = true;
    return out;
  }
  const FockFactor ff = extract_fock_factor(sector_tensor(b_state, m), d, m);
  out.fock_residual = ff.residual;
  out.fock_verdict = ff.residual <= fock_tol;
  out.mode = basis.synthesize(ff.factor);

  const Eigen::VectorXcd expected = pdc.lambda.row(0).transpose().normalized();
  const complex align = expected.dot(ff.factor);
  out.mode_error = (ff.factor - expected * (align / std::abs(align))).norm();
  return out;
}

}  // namespace specmodes
