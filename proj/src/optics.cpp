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

#include "specmodes/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "specmodes/errors.hpp"
#include "specmodes/states.hpp"
#include "tensor_ops.hpp"

namespace specmodes {
namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// (t a + r b)^p (r a - t b)^q |0> / sqrt(p! q!) expanded over |x, p+q-x>.
std::vector<double> beamsplitter_row(int p, int q, double t, double r) {
  std::vector<double> out(static_cast<std::size_t>(p + q + 1), 0.0);
  for (int j = 0; j <= p; ++j) {
    for (int k = 0; k <= q; ++k) {
      const int x = j + k;
      const int y = p + q - x;
      const double c = binomial(p, j) * std::pow(t, j) * std::pow(r, p - j) * binomial(q, k) *
                       std::pow(r, k) * std::pow(-t, q - k);
      out[static_cast<std::size_t>(x)] += c * std::sqrt(detail::factorial(x) * detail::factorial(y));
    }
  }
  const double norm = std::sqrt(detail::factorial(p) * detail::factorial(q));
  for (double& v : out) v /= norm;
  return out;
}

std::set<int> eigenmodes_of(const OccupationState& state, std::string_view mode) {
  std::set<int> out;
  for (const auto& slot : state.slots()) {
    if (slot.mode == mode) out.insert(slot.eigenmode);
  }
  return out;
}

}  // namespace

OccupationState beamsplitter(const OccupationState& state, std::string_view mode_a,
                             std::string_view mode_b, double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw ConfigError("beamsplitter transmissivity must lie in [0, 1]");
  }
  const auto modes = eigenmodes_of(state, mode_a);
  if (modes.empty() || modes != eigenmodes_of(state, mode_b)) {
    throw UsageError("beamsplitter inputs must carry matching eigenmode sets");
  }
  const double t = transmissivity;
  const double r = std::sqrt(std::max(0.0, 1.0 - t * t));

  AmplitudeMap current = state.amplitudes();
  for (int eig : modes) {
    const std::size_t ia = state.slot_index(mode_a, eig);
    const std::size_t ib = state.slot_index(mode_b, eig);
    AmplitudeMap next;
    for (const auto& [occ, amp] : current) {
      if (amp == complex{}) continue;
      const int p = occ[ia];
      const int q = occ[ib];
      const auto row = beamsplitter_row(p, q, t, r);
      for (int x = 0; x <= p + q; ++x) {
        const double c = row[static_cast<std::size_t>(x)];
        if (c == 0.0) continue;
        Occupation out = occ;
        out[ia] = x;
        out[ib] = p + q - x;
        next[out] += amp * c;
      }
    }
    current = std::move(next);
  }
  return OccupationState(state.slots(), std::move(current), state.truncation());
}

namespace {

constexpr double kZeroProbability = 1e-30;

}  // namespace

Conditioned<OccupationState> postselect(const OccupationState& state, std::string_view mode, int count) {
  const auto slots = state.slots_of_mode(mode);
  if (slots.empty()) throw UsageError("postselection on an unknown spatial mode");
  if (count < 0) throw UsageError("postselected photon count must be nonnegative");
  const double total = state.norm_squared();
  if (total == 0.0) throw NumericalError("cannot postselect a zero state");
  AmplitudeMap kept;
  double kept_norm = 0.0;
  for (const auto& [occ, amp] : state.amplitudes()) {
    int n = 0;
    for (std::size_t s : slots) n += occ[s];
    if (n == count) {
      kept.emplace(occ, amp);
      kept_norm += std::norm(amp);
    }
  }
  Conditioned<OccupationState> out;
  out.probability = kept_norm / total;
  if (out.probability <= kZeroProbability) {
    out.probability = 0.0;
    return out;
  }
  out.state = OccupationState(state.slots(), std::move(kept), state.truncation()).normalized();
  return out;
}

Conditioned<OccupationEnsemble> postselect(const OccupationState& state, std::string_view mode,
                                           int eigenmode, int count) {
  const std::size_t measured = state.slot_index(mode, eigenmode);
  if (count < 0) throw UsageError("postselected photon count must be nonnegative");
  const auto traced = state.slots_of_mode(mode);
  std::vector<std::size_t> kept_slots;
  for (std::size_t s = 0; s < state.slots().size(); ++s) {
    if (state.slots()[s].mode != mode) kept_slots.push_back(s);
  }
  const double total = state.norm_squared();
  if (total == 0.0) throw NumericalError("cannot postselect a zero state");

  std::map<Occupation, AmplitudeMap> branches;
  double kept_norm = 0.0;
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (occ[measured] != count || amp == complex{}) continue;
    Occupation traced_key, kept_key;
    for (std::size_t s : traced) traced_key.push_back(occ[s]);
    for (std::size_t s : kept_slots) kept_key.push_back(occ[s]);
    branches[traced_key][kept_key] += amp;
    kept_norm += std::norm(amp);
  }
  Conditioned<OccupationEnsemble> out;
  out.probability = kept_norm / total;
  if (out.probability <= kZeroProbability) {
    out.probability = 0.0;
    return out;
  }
  const double scale = 1.0 / std::sqrt(kept_norm);
  std::vector<AmplitudeMap> list;
  for (auto& [key, branch] : branches) {
    for (auto& [occ, amp] : branch) amp *= scale;
    list.push_back(std::move(branch));
  }
  std::vector<Slot> slots;
  for (std::size_t s : kept_slots) slots.push_back(state.slots()[s]);
  out.state = OccupationEnsemble(std::move(slots), std::move(list), state.truncation());
  return out;
}

DensityOperator spectral_filter(const JointSDF& fock_input, const SpectralFunction& filter, double fock_tol) {
  if (!filter.is_normalized()) throw UsageError("filter mode must be normalized");
  const FockVerdict verdict = is_fock_state(fock_input, fock_tol);
  if (!verdict.is_fock) {
    std::ostringstream msg;
    msg << "spectral_filter's Fock path needs a Fock-state input (residual " << verdict.residual
        << "); decompose the state and use the occupation-state path instead";
    throw UsageError(msg.str());
  }
  const TwoModeSplit split = two_mode_split(verdict.factor, filter);
  const int n = fock_input.photon_count();
  const DetectorStatistics stats = detector_statistics(n, split.lambda1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) rho(i, i) = stats.probabilities[static_cast<std::size_t>(i)];
  return DensityOperator("filter", rho);
}

DensityOperator spectral_filter(const OccupationState& state, std::string_view mode, int filter_eigenmode) {
  return reduce_to_slot(state.normalized(), state.slot_index(mode, filter_eigenmode));
}

double DetectorStatistics::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

DetectorStatistics detector_statistics(int n, complex lambda1) {
  if (n < 0) throw ConfigError("photon number must be nonnegative");
  double eta = std::norm(lambda1);
  if (eta > 1.0 + 1e-12) throw ConfigError("|lambda1| must not exceed 1");
  eta = std::min(eta, 1.0);
  DetectorStatistics out;
  out.probabilities.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    out.probabilities[static_cast<std::size_t>(m)] =
        binomial(n, m) * std::pow(eta, m) * std::pow(1.0 - eta, n - m);
  }
  return out;
}

std::vector<complex> fock_split_amplitudes(int n, complex lambda1, double lambda0) {
  std::vector<complex> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    out[static_cast<std::size_t>(i)] = std::sqrt(binomial(n, i)) * std::pow(lambda1, i) * std::pow(lambda0, n - i);
  }
  return out;
}

DensityOperator homodyne_observe(const HomodyneInput& input) {
  if (input.weights.size() != input.split.size() || input.weights.empty()) {
    throw UsageError("homodyne input needs one split per superposition weight");
  }
  double weight_norm = 0.0;
  for (complex c : input.weights) weight_norm += std::norm(c);
  if (std::abs(weight_norm - 1.0) > 1e-9) throw UsageError("homodyne superposition weights must be normalized");
  const int top = static_cast<int>(input.weights.size()) - 1;
  for (int n = 0; n <= top; ++n) {
    const auto& row = input.split[static_cast<std::size_t>(n)];
    if (static_cast<int>(row.size()) != n + 1) throw UsageError("split amplitudes for n photons need n + 1 entries");
    double s = 0.0;
    for (complex v : row) s += std::norm(v);
    if (input.weights[static_cast<std::size_t>(n)] != complex{} && std::abs(s - 1.0) > 1e-9) {
      throw UsageError("split amplitudes of each photon-number term must be normalized");
    }
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(top + 1, top + 1);
  // Amplitude of |i>_probe |n-i>_rest is c_n split[n][i]; tracing the rest
  // pairs terms with equal remainder n - i.
  for (int n = 0; n <= top; ++n) {
    for (int i = 0; i <= n; ++i) {
      const complex ket = input.weights[static_cast<std::size_t>(n)] * input.split[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      for (int n2 = 0; n2 <= top; ++n2) {
        const int i2 = n2 - (n - i);
        if (i2 < 0 || i2 > n2) continue;
        const complex bra = input.weights[static_cast<std::size_t>(n2)] * input.split[static_cast<std::size_t>(n2)][static_cast<std::size_t>(i2)];
        rho(i, i2) += ket * std::conj(bra);
      }
    }
  }
  return DensityOperator("probe", rho);
}

DensityOperator homodyne_observe(std::span<const complex> weights, const SpectralFunction& pulse,
                                 const SpectralFunction& probe) {
  if (!probe.is_normalized() || !pulse.is_normalized()) throw UsageError("pulse and probe must be normalized");
  const TwoModeSplit split = two_mode_split(pulse, probe);
  HomodyneInput input;
  input.weights.assign(weights.begin(), weights.end());
  for (std::size_t n = 0; n < weights.size(); ++n) {
    input.split.push_back(fock_split_amplitudes(static_cast<int>(n), split.lambda1, split.lambda0));
  }
  return homodyne_observe(input);
}

OccupationState occupation_state(const ModeDecomposition& dec, std::string_view mode, int truncation) {
  AmplitudeMap amps;
  for (const auto& [occ, amp] : dec.occupation_amplitudes()) amps.emplace(occ, amp);
  return OccupationState(mode_slots(mode, static_cast<int>(dec.basis().size())), std::move(amps), truncation);
}

DensityOperator homodyne_observe(std::span<const complex> weights, std::span<const ModeDecomposition> sectors) {
  if (weights.size() != sectors.size() || weights.empty()) {
    throw UsageError("homodyne input needs one decomposition per superposition weight");
  }
  const std::size_t d = sectors.front().basis().size();
  const int top = static_cast<int>(sectors.size()) - 1;
  OccupationState total(mode_slots("signal", static_cast<int>(d)), AmplitudeMap{}, std::max(top, 0));
  for (std::size_t n = 0; n < sectors.size(); ++n) {
    if (sectors[n].basis().size() != d) throw UsageError("all sectors must share one basis");
    if (sectors[n].photon_count() != static_cast<int>(n)) throw UsageError("sector n must hold n photons");
    if (weights[n] == complex{}) continue;
    OccupationState sector = occupation_state(sectors[n], "signal", top).normalized();
    total = total.plus(sector.scaled(weights[n]));
  }
  DensityOperator rho = reduce_to_slot(total.normalized(), 0);
  // Pad to the full photon-number cutoff so the dimension does not depend on
  // which amplitudes happen to vanish.
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(top + 1, top + 1);
  const auto k = static_cast<Eigen::Index>(rho.dimension());
  padded.topLeftCorner(k, k) = rho.matrix();
  return DensityOperator("probe", padded);
}

Eigen::VectorXcd sector_tensor(const OccupationState& state, int photons) {
  const auto& slots = state.slots();
  if (slots.empty()) throw UsageError("sector tensor needs at least one slot");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].mode != slots.front().mode || slots[i].eigenmode != static_cast<int>(i)) {
      throw UsageError("sector tensor needs slots 0..d-1 of a single spatial mode");
    }
  }
  const std::size_t d = slots.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::checked_power(d, photons)));
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (std::accumulate(occ.begin(), occ.end(), 0) != photons || amp == complex{}) continue;
    // lambda = amp / sqrt(prod m!) spread evenly over the n!/prod m! orderings.
    double fact = 1.0;
    for (int m : occ) fact *= detail::factorial(m);
    const complex per_ordering = amp / std::sqrt(fact) * fact / detail::factorial(photons);
    std::vector<int> key;
    for (std::size_t s = 0; s < d; ++s) key.insert(key.end(), static_cast<std::size_t>(occ[s]), static_cast<int>(s));
    do {
      std::size_t flat = 0;
      for (int i : key) flat = flat * d + static_cast<std::size_t>(i);
      out[static_cast<Eigen::Index>(flat)] = per_ordering;
    } while (std::next_permutation(key.begin(), key.end()));
  }
  return out;
}

}  // namespace specmodes
