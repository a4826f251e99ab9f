// Copyright 2026 The cavent Authors
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

#include "cavent/composition.hpp"

#include <array>
#include <cmath>
#include <string>

namespace cavent {

StateFamily parse_family(std::string_view name) {
  if (name == "two-excitation") return StateFamily::kTwoExcitation;
  if (name == "one-excitation") return StateFamily::kOneExcitation;
  throw ParameterError("unknown state family '" + std::string(name) +
                       "' (expected two-excitation or one-excitation)");
}

std::string_view family_name(StateFamily family) {
  return family == StateFamily::kTwoExcitation ? "two-excitation" : "one-excitation";
}

InitialJointState InitialJointState::with_phase(StateFamily family, double alpha,
                                                double beta_phase) {
  InitialJointState s;
  s.family = family;
  s.alpha = alpha;
  const double mag = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  s.beta = std::polar(mag, beta_phase);
  s.validate();
  return s;
}

void InitialJointState::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
  if (std::abs(alpha * alpha + std::norm(beta) - 1.0) > 1e-12) {
    throw ParameterError("initial amplitudes are not normalized: |alpha|^2 + |beta|^2 != 1");
  }
}

ComplexMatrix InitialJointState::density(const TruncationSpec& trunc) const {
  validate();
  trunc.validate();
  const Eigen::Index d = trunc.dim();
  const Eigen::Index excited = trunc.index(true, 0);
  const Eigen::Index ground = trunc.index(false, 0);
  const auto joint = [d](Eigen::Index a, Eigen::Index b) { return a * d + b; };

  ComplexVector psi = ComplexVector::Zero(d * d);
  if (family == StateFamily::kTwoExcitation) {
    psi(joint(ground, ground)) = alpha;
    psi(joint(excited, excited)) = beta;
  } else {
    psi(joint(excited, ground)) = alpha;
    psi(joint(ground, excited)) = beta;
  }
  return psi * psi.adjoint();
}

JointState initial_joint_state(const InitialJointState& init, const TruncationSpec& trunc) {
  return JointState{init.density(trunc), trunc};
}

JointState compose_joint(const Propagator& prop_a, const Propagator& prop_b,
                         const JointState& rho0, int sample) {
  if (!(prop_a.grid == prop_b.grid)) throw ParameterError("compose_joint: propagators use different time grids");
  if (sample < 0 || sample >= prop_a.grid.n_samples) throw ParameterError("compose_joint: sample index out of range");
  if (prop_a.dim != rho0.trunc.dim() || prop_b.dim != rho0.trunc.dim()) {
    throw DimensionError("compose_joint: propagator dimension does not match joint state truncation");
  }
  const ComplexMatrix joint = tensor_superops(prop_a.at(sample), prop_a.dim, prop_b.at(sample), prop_b.dim);
  return JointState{apply_superop(joint, rho0.matrix), rho0.trunc};
}

namespace {

struct PairCoefficients {
  double pop_a, pop_b;
  Complex coh_a, coh_b;
};

ComplexMatrix x_state(const InitialJointState& init, const PairCoefficients& c) {
  init.validate();
  const auto check = [](double pop, Complex coh) {
    const double tol = kDensityTolerance;
    if (!(pop >= -tol && pop <= 1.0 + tol) || !(std::abs(coh) <= 1.0 + tol)) {
      throw InvalidStateError("non-physical subsystem coefficients");
    }
  };
  check(c.pop_a, c.coh_a);
  check(c.pop_b, c.coh_b);

  const double a2 = init.alpha * init.alpha;
  const double b2 = std::norm(init.beta);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  if (init.family == StateFamily::kTwoExcitation) {
    rho(0, 0) = b2 * c.pop_a * c.pop_b;
    rho(1, 1) = b2 * c.pop_a * (1.0 - c.pop_b);
    rho(2, 2) = b2 * (1.0 - c.pop_a) * c.pop_b;
    rho(3, 3) = a2 + b2 * (1.0 - c.pop_a) * (1.0 - c.pop_b);
    rho(0, 3) = init.alpha * init.beta * c.coh_a * c.coh_b;
    rho(3, 0) = std::conj(rho(0, 3));
  } else {
    rho(1, 1) = a2 * c.pop_a;
    rho(2, 2) = b2 * c.pop_b;
    rho(3, 3) = 1.0 - a2 * c.pop_a - b2 * c.pop_b;
    rho(1, 2) = init.alpha * std::conj(init.beta) * c.coh_a * std::conj(c.coh_b);
    rho(2, 1) = std::conj(rho(1, 2));
  }
  return rho;
}

void check_sample(const CoefficientTrajectory& a, const CoefficientTrajectory& b, int sample) {
  if (sample < 0 || static_cast<std::size_t>(sample) >= a.size() ||
      static_cast<std::size_t>(sample) >= b.size()) {
    throw ParameterError("coefficient sample index out of range");
  }
}

}  // namespace

ComplexMatrix two_qubit_state(const InitialJointState& init, const CoefficientTrajectory& coeffs_a,
                              const CoefficientTrajectory& coeffs_b, int sample) {
  check_sample(coeffs_a, coeffs_b, sample);
  return x_state(init, {coeffs_a.P[sample], coeffs_b.P[sample], coeffs_a.p[sample], coeffs_b.p[sample]});
}

ComplexMatrix two_cavity_state(const InitialJointState& init, const CoefficientTrajectory& coeffs_a,
                               const CoefficientTrajectory& coeffs_b, int sample) {
  check_sample(coeffs_a, coeffs_b, sample);
  return x_state(init, {coeffs_a.Q[sample], coeffs_b.Q[sample], coeffs_a.q[sample], coeffs_b.q[sample]});
}

PairSelector parse_pair(std::string_view name) {
  if (name == "qq") return PairSelector::kQubits;
  if (name == "cc") return PairSelector::kCavities;
  if (name == "qAcB") return PairSelector::kQubitACavityB;
  if (name == "cAqB") return PairSelector::kCavityAQubitB;
  if (name == "qAcA") return PairSelector::kIntraA;
  if (name == "qBcB") return PairSelector::kIntraB;
  throw ParameterError("unknown pair selector '" + std::string(name) + "'");
}

ComplexMatrix reduce_pair(const JointState& joint, PairSelector pair) {
  // Factor indices: 0 = q_A, 1 = c_A, 2 = q_B, 3 = c_B.
  std::array<std::size_t, 2> keep{};
  switch (pair) {
    case PairSelector::kQubits: keep = {0, 2}; break;
    case PairSelector::kCavities: keep = {1, 3}; break;
    case PairSelector::kQubitACavityB: keep = {0, 3}; break;
    case PairSelector::kCavityAQubitB: keep = {1, 2}; break;
    case PairSelector::kIntraA: keep = {0, 1}; break;
    case PairSelector::kIntraB: keep = {2, 3}; break;
    default: throw ParameterError("invalid pair selector");
  }
  const TensorFactorization fact = joint.factorization();
  const ComplexMatrix reduced = partial_trace(joint.matrix, fact, keep);

  // Local indices of levels "1" and "0" within each kept factor.
  const auto levels = [&](std::size_t factor) -> std::array<Eigen::Index, 2> {
    const bool cavity = factor == 1 || factor == 3;
    if (!cavity) return {0, 1};
    const Eigen::Index n_max = joint.trunc.n_max;
    return {n_max - 1, n_max};
  };
  const auto first = levels(keep[0]);
  const auto second = levels(keep[1]);
  const Eigen::Index d2 = fact.dims()[keep[1]];

  std::array<Eigen::Index, 4> idx{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) idx[i * 2 + j] = first[i] * d2 + second[j];
  }
  ComplexMatrix out(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = reduced(idx[r], idx[c]);
  }
  return out;
}

double total_excitation(const JointState& joint) {
  const SubsystemOperators ops = subsystem_operators(joint.trunc);
  const ComplexMatrix local = ops.qubit_excitation + ops.photon_number;
  const ComplexMatrix id = ComplexMatrix::Identity(joint.trunc.dim(), joint.trunc.dim());
  const ComplexMatrix total = kron(local, id) + kron(id, local);
  return (total * joint.matrix).trace().real();
}

}  // namespace cavent
