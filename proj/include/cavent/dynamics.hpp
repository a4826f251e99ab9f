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

// Time evolution of one qubit-cavity subsystem.
//
// Time is measured in the inverse of whatever unit the rates carry: gt when
// the parameters are in units of g, 1/μeV-scaled units otherwise. Callers
// working in ps convert through time_to_physical.

#ifndef CAVENT_DYNAMICS_HPP_
#define CAVENT_DYNAMICS_HPP_

#include <vector>

#include "cavent/linops.hpp"
#include "cavent/model.hpp"

namespace cavent {

/// Uniform grid t_i = i * t_end / (n_samples - 1), starting at 0.
struct TimeGrid {
  double t_end = 1.0;
  int n_samples = 2;

  void validate() const;
  double spacing() const { return t_end / (n_samples - 1); }
  double at(int i) const { return spacing() * i; }
  std::vector<double> times() const;

  bool operator==(const TimeGrid&) const = default;
};

/// Classical RK4 with a fixed step; every grid interval is split into
/// equal substeps so that h * max(g, gamma_c, gamma_q, gamma_d) <= step_bound
/// (and the lab-frame frequencies too, when that frame is selected).
/// `refinement` multiplies the substep count; 2 halves the step.
struct IntegratorOptions {
  double step_bound = 0.005;  // max(g, rates) * h
  int refinement = 1;
};

/// Number of RK4 substeps per grid interval for the given rate scale.
inline constexpr int kMaxSubsteps = 10'000'000;

/// RK4 substeps per grid interval. Throws ParameterError above kMaxSubsteps.
int substeps_per_interval(const TimeGrid& grid, double rate_scale, const IntegratorOptions& opts);

/// Integrates dv/dt = generator * v and samples v on the grid.
std::vector<ComplexVector> integrate_generator(const ComplexMatrix& generator,
                                               const ComplexVector& v0, const TimeGrid& grid,
                                               double rate_scale,
                                               const IntegratorOptions& opts = {});

/// Integrates dPhi/dt = generator * Phi from Phi(0) = 1; column k of Phi is
/// the evolution of the k-th elementary Liouville vector.
std::vector<ComplexMatrix> integrate_propagator(const ComplexMatrix& generator,
                                                const TimeGrid& grid, double rate_scale,
                                                const IntegratorOptions& opts = {});

/// Sampled coefficients P_t, p_t (qubit) and Q_t, q_t (cavity).
///
/// Starting from |1_q 0_c>, P_t is the qubit excited population and Q_t the
/// mean photon number. Starting from |+_q 0_c> with |+> = (|1> + |0>)/sqrt 2,
/// p_t and q_t are twice the qubit <1|.|0> and cavity <1|.|0> coherences of
/// the reduced states.
struct CoefficientTrajectory {
  TimeGrid grid;
  std::vector<double> P;
  std::vector<Complex> p;
  std::vector<double> Q;
  std::vector<Complex> q;

  std::size_t size() const { return P.size(); }
  /// Throws InvalidStateError if any sample falls outside the physical ranges.
  void validate(double tol = kDensityTolerance) const;
};

/// Channel of one subsystem sampled on a grid.
struct Propagator {
  TimeGrid grid;
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> maps;

  const ComplexMatrix& at(int sample) const { return maps.at(sample); }
  ComplexMatrix apply(int sample, const ComplexMatrix& rho) const {
    return apply_superop(at(sample), rho);
  }
};

class AnalyticPathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed-form coefficients, valid only without pure dephasing. The cavity
/// coherence carries the -i phase of the exchange term:
/// q_t = -i e^{-(gc+gq)t/4} (g/Omega) sin(Omega t).
CoefficientTrajectory analytic_coefficients(const SubsystemParams& params, const TimeGrid& grid);

std::vector<ComplexMatrix> evolve_subsystem(const SubsystemParams& params,
                                            const TruncationSpec& trunc,
                                            const ComplexMatrix& rho0, const TimeGrid& grid,
                                            Frame frame = Frame::kRotating,
                                            const IntegratorOptions& opts = {});

Propagator propagator(const SubsystemParams& params, const TruncationSpec& trunc,
                      const TimeGrid& grid, Frame frame = Frame::kRotating,
                      const IntegratorOptions& opts = {});

CoefficientTrajectory extract_coefficients(const SubsystemParams& params,
                                           const TruncationSpec& trunc, const TimeGrid& grid,
                                           Frame frame = Frame::kRotating,
                                           const IntegratorOptions& opts = {});

/// Rate used by the step rule for a subsystem in the given frame.
double step_rate_scale(const SubsystemParams& params, Frame frame);

/// |q, n><q, n| on the subsystem space.
ComplexMatrix basis_projector(const TruncationSpec& trunc, bool qubit_excited, int photons);

}  // namespace cavent

#endif  // CAVENT_DYNAMICS_HPP_
