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

// Joint state of two independent qubit-cavity subsystems A and B.
//
// Joint factor order is (q_A, c_A, q_B, c_B). Two-party matrices use the
// basis |11>, |10>, |01>, |00> (first entry A, second entry B).

#ifndef CAVENT_COMPOSITION_HPP_
#define CAVENT_COMPOSITION_HPP_

#include <string_view>

#include "cavent/dynamics.hpp"

namespace cavent {

enum class StateFamily {
  kTwoExcitation,  // (alpha |00>_q + beta |11>_q) |00>_c
  kOneExcitation,  // (alpha |10>_q + beta |01>_q) |00>_c
};

StateFamily parse_family(std::string_view name);
std::string_view family_name(StateFamily family);

struct InitialJointState {
  StateFamily family = StateFamily::kTwoExcitation;
  double alpha = 0.8;
  Complex beta = 0.6;

  /// beta = e^{i phase} sqrt(1 - alpha^2).
  static InitialJointState with_phase(StateFamily family, double alpha, double beta_phase = 0.0);

  void validate() const;
  /// Pure-state density matrix on the joint truncated space.
  ComplexMatrix density(const TruncationSpec& trunc) const;
};

struct JointState {
  ComplexMatrix matrix;
  TruncationSpec trunc;

  TensorFactorization factorization() const {
    return TensorFactorization({2, trunc.cavity_dim(), 2, trunc.cavity_dim()});
  }
};

JointState initial_joint_state(const InitialJointState& init, const TruncationSpec& trunc = {});

/// (Phi_A(t) (x) Phi_B(t)) rho0 at grid sample `sample`.
JointState compose_joint(const Propagator& prop_a, const Propagator& prop_b,
                         const JointState& rho0, int sample);

/// Two-qubit X-state built from subsystem coefficients.
ComplexMatrix two_qubit_state(const InitialJointState& init, const CoefficientTrajectory& coeffs_a,
                              const CoefficientTrajectory& coeffs_b, int sample);

/// Same construction with (Q, q) in place of (P, p).
ComplexMatrix two_cavity_state(const InitialJointState& init, const CoefficientTrajectory& coeffs_a,
                               const CoefficientTrajectory& coeffs_b, int sample);

enum class PairSelector {
  kQubits,         // q_A q_B
  kCavities,       // c_A c_B
  kQubitACavityB,  // q_A c_B
  kCavityAQubitB,  // c_A q_B
  kIntraA,         // q_A c_A
  kIntraB,         // q_B c_B
};

PairSelector parse_pair(std::string_view name);

/// 4x4 reduced state of the selected pair. Cavity factors are restricted to
/// the {|1>, |0>} levels, which carry all the weight for the supported
/// initial states.
ComplexMatrix reduce_pair(const JointState& joint, PairSelector pair);

/// Expected total excitation (both qubits plus both photon numbers).
double total_excitation(const JointState& joint);

}  // namespace cavent

#endif  // CAVENT_COMPOSITION_HPP_
