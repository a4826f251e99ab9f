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

#include "cavent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cavent {

void TimeGrid::validate() const {
  if (n_samples < 2) throw ParameterError("time grid needs at least 2 samples");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("time grid end must be positive");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_samples);
  for (int i = 0; i < n_samples; ++i) t[i] = at(i);
  return t;
}

void CoefficientTrajectory::validate(double tol) const {
  const std::size_t n = P.size();
  if (p.size() != n || Q.size() != n || q.size() != n ||
      n != static_cast<std::size_t>(grid.n_samples)) {
    throw InvalidStateError("coefficient trajectory has inconsistent lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (P[i] < -tol || P[i] > 1.0 + tol || Q[i] < -tol || Q[i] > 1.0 + tol ||
        std::abs(p[i]) > 1.0 + tol || std::abs(q[i]) > 1.0 + tol) {
      throw InvalidStateError("coefficient trajectory sample " + std::to_string(i) +
                              " is outside the physical range");
    }
  }
}

int substeps_per_interval(const TimeGrid& grid, double rate_scale, const IntegratorOptions& opts) {
  grid.validate();
  if (!(opts.step_bound > 0.0)) throw ParameterError("integrator step bound must be positive");
  if (opts.refinement < 1) throw ParameterError("integrator refinement must be at least 1");
  if (rate_scale <= 0.0) return opts.refinement;
  const double h_max = opts.step_bound / rate_scale;
  // Small slack so that an interval equal to h_max is not split in two.
  const double base = std::max(1.0, std::ceil(grid.spacing() / h_max - 1e-9));
  if (!(base * opts.refinement <= kMaxSubsteps)) {
    throw ParameterError("step rule needs more than " + std::to_string(kMaxSubsteps) +
                         " substeps per grid interval; refine the time grid");
  }
  return static_cast<int>(base) * opts.refinement;
}

namespace {

template <typename State>
void rk4_step(const ComplexMatrix& gen, State& y, double h) {
  const State k1 = gen * y;
  const State k2 = gen * (y + (0.5 * h) * k1);
  const State k3 = gen * (y + (0.5 * h) * k2);
  const State k4 = gen * (y + h * k3);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State>
std::vector<State> integrate(const ComplexMatrix& gen, State y, const TimeGrid& grid,
                             double rate_scale, const IntegratorOptions& opts) {
  const int sub = substeps_per_interval(grid, rate_scale, opts);
  const double h = grid.spacing() / sub;
  std::vector<State> out;
  out.reserve(grid.n_samples);
  out.push_back(y);
  for (int i = 1; i < grid.n_samples; ++i) {
    for (int s = 0; s < sub; ++s) rk4_step(gen, y, h);
    out.push_back(y);
  }
  return out;
}

}  // namespace

std::vector<ComplexVector> integrate_generator(const ComplexMatrix& generator,
                                               const ComplexVector& v0, const TimeGrid& grid,
                                               double rate_scale, const IntegratorOptions& opts) {
  if (generator.rows() != generator.cols() || generator.cols() != v0.size()) {
    throw DimensionError("integrate_generator: generator and state sizes differ");
  }
  return integrate<ComplexVector>(generator, v0, grid, rate_scale, opts);
}

std::vector<ComplexMatrix> integrate_propagator(const ComplexMatrix& generator,
                                                const TimeGrid& grid, double rate_scale,
                                                const IntegratorOptions& opts) {
  if (generator.rows() != generator.cols()) {
    throw DimensionError("integrate_propagator: generator is not square");
  }
  return integrate<ComplexMatrix>(
      generator, ComplexMatrix::Identity(generator.rows(), generator.cols()), grid, rate_scale,
      opts);
}

double step_rate_scale(const SubsystemParams& params, Frame frame) {
  double scale = params.max_rate();
  if (frame == Frame::kLab) scale = std::max({scale, std::abs(params.omega0), std::abs(params.omega_c)});
  return scale;
}

ComplexMatrix basis_projector(const TruncationSpec& trunc, bool qubit_excited, int photons) {
  ComplexMatrix m = ComplexMatrix::Zero(trunc.dim(), trunc.dim());
  const Eigen::Index k = trunc.index(qubit_excited, photons);
  m(k, k) = 1.0;
  return m;
}

CoefficientTrajectory analytic_coefficients(const SubsystemParams& params, const TimeGrid& grid) {
  params.validate();
  grid.validate();
  if (params.gamma_d != 0.0) throw AnalyticPathError("analytic path requires zero dephasing");

  const double g = params.g;
  const double sigma = (params.gamma_c + params.gamma_q) / 4.0;
  const double k = (params.gamma_c - params.gamma_q) / 4.0;
  const double omega_sq = g * g - k * k;

  CoefficientTrajectory out;
  out.grid = grid;
  out.P.resize(grid.n_samples);
  out.p.resize(grid.n_samples);
  out.Q.resize(grid.n_samples);
  out.q.resize(grid.n_samples);

  for (int i = 0; i < grid.n_samples; ++i) {
    const double t = grid.at(i);
    double pt = 0.0;
    double qt = 0.0;
    if (omega_sq > 0.0) {
      const double w = std::sqrt(omega_sq);
      const double decay = std::exp(-sigma * t);
      pt = decay * (std::cos(w * t) + (k / w) * std::sin(w * t));
      qt = decay * (g / w) * std::sin(w * t);
    } else if (omega_sq < 0.0) {
      // cos -> cosh, sin -> sinh with |Omega|, written through exponentials
      // that cannot overflow since |Omega| <= sigma.
      const double w = std::sqrt(-omega_sq);
      const double grow = std::exp((w - sigma) * t);
      const double shrink = std::exp(-(w + sigma) * t);
      pt = 0.5 * ((1.0 + k / w) * grow + (1.0 - k / w) * shrink);
      qt = (g / (2.0 * w)) * (grow - shrink);
    } else {
      const double decay = std::exp(-sigma * t);
      pt = decay * (1.0 + k * t);
      qt = decay * g * t;
    }
    out.p[i] = Complex(pt, 0.0);
    out.q[i] = Complex(0.0, -qt);
    out.P[i] = pt * pt;
    out.Q[i] = qt * qt;
  }
  return out;
}

std::vector<ComplexMatrix> evolve_subsystem(const SubsystemParams& params,
                                            const TruncationSpec& trunc,
                                            const ComplexMatrix& rho0, const TimeGrid& grid,
                                            Frame frame, const IntegratorOptions& opts) {
  params.validate();
  trunc.validate();
  grid.validate();
  if (rho0.rows() != trunc.dim() || rho0.cols() != trunc.dim()) {
    throw InvalidStateError("initial state has dimension " + std::to_string(rho0.rows()) +
                            ", truncation needs " + std::to_string(trunc.dim()));
  }
  require_density(rho0, "initial state");

  const ComplexMatrix gen = build_liouvillian(params, trunc, frame);
  const auto vecs = integrate_generator(gen, vectorize(rho0), grid, step_rate_scale(params, frame), opts);
  std::vector<ComplexMatrix> out;
  out.reserve(vecs.size());
  for (const auto& v : vecs) out.push_back(devectorize(v, trunc.dim()));
  return out;
}

Propagator propagator(const SubsystemParams& params, const TruncationSpec& trunc,
                      const TimeGrid& grid, Frame frame, const IntegratorOptions& opts) {
  params.validate();
  trunc.validate();
  grid.validate();
  const ComplexMatrix gen = build_liouvillian(params, trunc, frame);
  Propagator out;
  out.grid = grid;
  out.dim = trunc.dim();
  out.maps = integrate_propagator(gen, grid, step_rate_scale(params, frame), opts);
  return out;
}

CoefficientTrajectory extract_coefficients(const SubsystemParams& params,
                                           const TruncationSpec& trunc, const TimeGrid& grid,
                                           Frame frame, const IntegratorOptions& opts) {
  trunc.validate();
  const Eigen::Index e0 = trunc.index(true, 0);   // |1_q 0_c>
  const Eigen::Index g0 = trunc.index(false, 0);  // |0_q 0_c>

  ComplexMatrix excited = ComplexMatrix::Zero(trunc.dim(), trunc.dim());
  excited(e0, e0) = 1.0;
  ComplexMatrix plus = ComplexMatrix::Zero(trunc.dim(), trunc.dim());
  plus(e0, e0) = plus(e0, g0) = plus(g0, e0) = plus(g0, g0) = 0.5;

  const auto from_excited = evolve_subsystem(params, trunc, excited, grid, frame, opts);
  const auto from_plus = evolve_subsystem(params, trunc, plus, grid, frame, opts);
  const SubsystemOperators ops = subsystem_operators(trunc);

  CoefficientTrajectory out;
  out.grid = grid;
  for (int i = 0; i < grid.n_samples; ++i) {
    const ComplexMatrix& ra = from_excited[i];
    const ComplexMatrix& rb = from_plus[i];
    out.P.push_back((ops.qubit_excitation * ra).trace().real());
    out.Q.push_back((ops.photon_number * ra).trace().real());

    Complex qubit_coh = 0.0;
    for (int n = 0; n <= trunc.n_max; ++n) qubit_coh += rb(trunc.index(true, n), trunc.index(false, n));
    Complex cavity_coh = 0.0;
    for (bool exc : {true, false}) cavity_coh += rb(trunc.index(exc, 1), trunc.index(exc, 0));
    out.p.push_back(2.0 * qubit_coh);
    out.q.push_back(2.0 * cavity_coh);
  }
  return out;
}

}  // namespace cavent
