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

#include "cavent/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cavent {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void SubsystemParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(g) || !finite(gamma_c) || !finite(gamma_q) || !finite(gamma_d) ||
      !finite(omega0) || !finite(omega_c)) {
    throw ParameterError("subsystem parameters must be finite");
  }
  if (g < 0.0) throw ParameterError("g must be non-negative, got " + fmt_double(g));
  if (gamma_c < 0.0) throw ParameterError("gamma_c must be non-negative, got " + fmt_double(gamma_c));
  if (gamma_q < 0.0) throw ParameterError("gamma_q must be non-negative, got " + fmt_double(gamma_q));
  if (gamma_d < 0.0) throw ParameterError("gamma_d must be non-negative, got " + fmt_double(gamma_d));
  if (omega0 < 0.0) throw ParameterError("omega0 must be non-negative");
  if (omega0 != omega_c) {
    throw ParameterError("qubit and cavity must be resonant (omega0 = " + fmt_double(omega0) +
                         ", omega_c = " + fmt_double(omega_c) + ")");
  }
}

std::vector<std::string> SubsystemParams::rwa_warnings() const {
  std::vector<std::string> out;
  if (omega0 <= 0.0) return out;
  const double limit = omega0 / 10.0;
  const std::pair<const char*, double> rates[] = {
      {"g", g}, {"gamma_c", gamma_c}, {"gamma_q", gamma_q}, {"gamma_d", gamma_d}};
  for (const auto& [name, value] : rates) {
    if (value >= limit) {
      out.push_back(std::string(name) + " = " + fmt_double(value) +
                    " is not below omega0/10 = " + fmt_double(limit) +
                    "; the rotating wave approximation may not hold");
    }
  }
  return out;
}

double SubsystemParams::max_rate() const { return std::max({g, gamma_c, gamma_q, gamma_d}); }

SubsystemParams SubsystemParams::in_units_of_g() const {
  if (!(g > 0.0)) throw ParameterError("cannot express rates in units of g = 0");
  SubsystemParams s = *this;
  s.g = 1.0;
  s.gamma_c = gamma_c / g;
  s.gamma_q = gamma_q / g;
  s.gamma_d = gamma_d / g;
  s.omega0 = omega0 / g;
  s.omega_c = omega_c / g;
  return s;
}

void TruncationSpec::validate() const {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
}

Eigen::Index TruncationSpec::index(bool qubit_excited, int photons) const {
  if (photons < 0 || photons > n_max) throw ParameterError("photon number outside truncation");
  return (qubit_excited ? 0 : cavity_dim()) + (n_max - photons);
}

double time_to_physical(double t_dimensionless, double g_micro_ev, const UnitContext& ctx) {
  if (ctx.mode != UnitMode::kPhysical) {
    throw ParameterError("time conversion requires physical units (no unit anchor in units of g)");
  }
  if (!(g_micro_ev > 0.0)) throw ParameterError("time conversion requires g > 0");
  return t_dimensionless * UnitContext::hbar / g_micro_ev;
}

double time_to_dimensionless(double t_ps, double g_micro_ev, const UnitContext& ctx) {
  if (ctx.mode != UnitMode::kPhysical) {
    throw ParameterError("time conversion requires physical units (no unit anchor in units of g)");
  }
  if (!(g_micro_ev > 0.0)) throw ParameterError("time conversion requires g > 0");
  return t_ps * g_micro_ev / UnitContext::hbar;
}

SubsystemOperators subsystem_operators(const TruncationSpec& trunc) {
  trunc.validate();
  const Eigen::Index nc = trunc.cavity_dim();

  // Qubit basis (|1>, |0>); cavity basis (|n_max>, ..., |0>).
  ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  ComplexMatrix sm = ComplexMatrix::Zero(2, 2);
  sm(1, 0) = 1.0;
  ComplexMatrix a = ComplexMatrix::Zero(nc, nc);
  for (int n = 1; n <= trunc.n_max; ++n) {
    // a|n> = sqrt(n)|n-1>; |n> sits at row n_max - n.
    a(trunc.n_max - n + 1, trunc.n_max - n) = std::sqrt(static_cast<double>(n));
  }
  const ComplexMatrix iq = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix ic = ComplexMatrix::Identity(nc, nc);

  SubsystemOperators ops;
  ops.sigma_z = kron(sz, ic);
  ops.sigma_minus = kron(sm, ic);
  ops.sigma_plus = ops.sigma_minus.adjoint();
  ops.a = kron(iq, a);
  ops.a_dag = ops.a.adjoint();
  ops.photon_number = ops.a_dag * ops.a;
  ops.qubit_excitation = ops.sigma_plus * ops.sigma_minus;
  return ops;
}

std::vector<JumpTerm> jump_terms(const SubsystemParams& params, const TruncationSpec& trunc) {
  const SubsystemOperators ops = subsystem_operators(trunc);
  return {
      {ops.a, params.gamma_c},
      {ops.sigma_minus, params.gamma_q},
      {ops.sigma_z, params.gamma_d / 4.0},
  };
}

ComplexMatrix build_hamiltonian(const SubsystemParams& params, const TruncationSpec& trunc,
                                Frame frame) {
  params.validate();
  const SubsystemOperators ops = subsystem_operators(trunc);
  ComplexMatrix h = params.g * (ops.a_dag * ops.sigma_minus + ops.a * ops.sigma_plus);
  if (frame == Frame::kLab) {
    h += 0.5 * params.omega0 * ops.sigma_z + params.omega_c * ops.photon_number;
  }
  return h;
}

ComplexMatrix lindblad_generator(const ComplexMatrix& hamiltonian,
                                 std::span<const JumpTerm> jumps) {
  const Eigen::Index d = hamiltonian.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i_unit(0.0, 1.0);
  // i[rho, H] = i rho H - i H rho
  ComplexMatrix gen = i_unit * sandwich_superop(id, hamiltonian) -
                      i_unit * sandwich_superop(hamiltonian, id);
  for (const JumpTerm& j : jumps) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix ldag = j.op.adjoint();
    const ComplexMatrix ldl = ldag * j.op;
    gen += (0.5 * j.rate) * (2.0 * sandwich_superop(j.op, ldag) - sandwich_superop(ldl, id) -
                             sandwich_superop(id, ldl));
  }
  return gen;
}

ComplexMatrix build_dissipator(const SubsystemParams& params, const TruncationSpec& trunc) {
  params.validate();
  const auto jumps = jump_terms(params, trunc);
  return lindblad_generator(ComplexMatrix::Zero(trunc.dim(), trunc.dim()), jumps);
}

ComplexMatrix build_liouvillian(const SubsystemParams& params, const TruncationSpec& trunc,
                                Frame frame) {
  const auto jumps = jump_terms(params, trunc);
  return lindblad_generator(build_hamiltonian(params, trunc, frame), jumps);
}

}  // namespace cavent
