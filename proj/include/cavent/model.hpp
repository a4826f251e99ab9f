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

// Physical model of one qubit-cavity subsystem: resonant Jaynes-Cummings
// Hamiltonian in the rotating wave approximation plus cavity loss,
// spontaneous emission into leaky modes and pure dephasing.
//
// Basis of one subsystem is qubit-major with the cavity in descending photon
// number. For n_max = 1 this is
//   |1_q 1_c>, |1_q 0_c>, |0_q 1_c>, |0_q 0_c>.
//
// Frames: Frame::kRotating (the default) drops the free terms
// (omega0/2) sigma_z + omega_c a^dag a, which at resonance only attach phases
// to coherences. Frame::kLab keeps them.

#ifndef CAVENT_MODEL_HPP_
#define CAVENT_MODEL_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavent/linops.hpp"

namespace cavent {

/// hbar in micro-eV * ps.
inline constexpr double kHbarMicroEvPs = 658.2119569;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Frame { kRotating, kLab };

/// Rates of one qubit-cavity pair, either in units of g (g = 1) or in μeV.
struct SubsystemParams {
  double g = 1.0;
  double gamma_c = 0.0;
  double gamma_q = 0.0;
  double gamma_d = 0.0;
  double omega0 = 0.0;   // 0 means "not specified"; only used by the RWA guard and Frame::kLab
  double omega_c = 0.0;

  /// Throws ParameterError on negative rates or omega0 != omega_c. g = 0
  /// (decoupled qubit and cavity) is accepted here; scenarios require g > 0.
  void validate() const;

  /// Non-fatal RWA guard: one message per rate that is not below omega0/10.
  /// Empty when omega0 is unspecified.
  std::vector<std::string> rwa_warnings() const;

  /// Largest of g and the three loss rates.
  double max_rate() const;

  /// Same physics expressed in units of g (g becomes 1). Requires g > 0.
  SubsystemParams in_units_of_g() const;

  bool operator==(const SubsystemParams&) const = default;
};

struct TruncationSpec {
  int n_max = 1;

  void validate() const;
  Eigen::Index cavity_dim() const { return n_max + 1; }
  Eigen::Index dim() const { return 2 * cavity_dim(); }

  /// Index of |qubit, photons> in the subsystem basis.
  Eigen::Index index(bool qubit_excited, int photons) const;
};

enum class UnitMode { kDimensionless, kPhysical };

struct UnitContext {
  static constexpr double hbar = kHbarMicroEvPs;
  UnitMode mode = UnitMode::kDimensionless;
};

/// gt -> ps, with g in μeV. Rejects dimensionless contexts.
double time_to_physical(double t_dimensionless, double g_micro_ev, const UnitContext& ctx);
/// ps -> gt, the exact inverse of time_to_physical.
double time_to_dimensionless(double t_ps, double g_micro_ev, const UnitContext& ctx);

/// Ladder and Pauli operators embedded in the truncated subsystem space.
struct SubsystemOperators {
  ComplexMatrix sigma_z;
  ComplexMatrix sigma_minus;
  ComplexMatrix sigma_plus;
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix photon_number;
  ComplexMatrix qubit_excitation;  // sigma_+ sigma_-
};

SubsystemOperators subsystem_operators(const TruncationSpec& trunc);

/// One Lindblad channel (rate/2)(2 L rho L^dag - L^dag L rho - rho L^dag L).
struct JumpTerm {
  ComplexMatrix op;
  double rate = 0.0;
};

/// Cavity loss, spontaneous emission and pure dephasing. Dephasing is
/// written as the channel L = sigma_z with rate gamma_d/4, which equals
/// (gamma_d/4)(sigma_z rho sigma_z - rho).
std::vector<JumpTerm> jump_terms(const SubsystemParams& params, const TruncationSpec& trunc);

ComplexMatrix build_hamiltonian(const SubsystemParams& params, const TruncationSpec& trunc,
                                Frame frame = Frame::kRotating);

/// Generator of d rho/dt = i[rho, H] + sum_k D_k rho in Liouville space.
ComplexMatrix lindblad_generator(const ComplexMatrix& hamiltonian,
                                 std::span<const JumpTerm> jumps);

/// Dissipative part only.
ComplexMatrix build_dissipator(const SubsystemParams& params, const TruncationSpec& trunc);

/// Full generator (coherent + dissipative) of one subsystem.
ComplexMatrix build_liouvillian(const SubsystemParams& params, const TruncationSpec& trunc,
                                Frame frame = Frame::kRotating);

}  // namespace cavent

#endif  // CAVENT_MODEL_HPP_
