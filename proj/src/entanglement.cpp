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

#include "cavent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cavent {

namespace {

ComplexMatrix sigma_y_sigma_y() {
  // sigma_y (x) sigma_y is real in the |11>, |10>, |01>, |00> basis.
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  return yy;
}

}  // namespace

double wootters_concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("concurrence needs a 4x4 matrix");
  require_density(rho, "two-qubit state");

  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm);
  const Eigen::VectorXd w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix sqrt_rho = eig.eigenvectors() * w.cast<Complex>().asDiagonal() *
                                 eig.eigenvectors().adjoint();

  // The lambda_i (square roots of the spectrum of rho (yy) rho* (yy)) are the
  // singular values of sqrt(rho) (yy) conj(sqrt(rho)). Taking them from an SVD
  // avoids square roots of eigenvalue noise near zero.
  const ComplexMatrix m = sqrt_rho * sigma_y_sigma_y() * sqrt_rho.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const Eigen::VectorXd s = svd.singularValues();  // descending
  const double c = s(0) - s(1) - s(2) - s(3);
  return std::clamp(c, 0.0, 1.0);
}

double xstate_concurrence(Complex rho14, double rho22, double rho33) {
  if (rho22 < 0.0 || rho33 < 0.0) throw InvalidStateError("X-state populations must be non-negative");
  return std::max(0.0, 2.0 * std::abs(rho14) - 2.0 * std::sqrt(rho22 * rho33));
}

FluxSeries output_flux(const CoefficientTrajectory& coeffs, double gamma_c) {
  if (gamma_c < 0.0) throw ParameterError("gamma_c must be non-negative");
  coeffs.validate();
  FluxSeries out;
  out.grid = coeffs.grid;
  out.photon_number.reserve(coeffs.size());
  out.output_flux.reserve(coeffs.size());
  for (double n : coeffs.Q) {
    const double photons = std::max(0.0, n);
    out.photon_number.push_back(photons);
    out.output_flux.push_back(gamma_c * photons);
  }
  return out;
}

std::optional<double> EsdEvents::final_death() const {
  if (death_times.empty() || revival_times.size() >= death_times.size()) return std::nullopt;
  return death_times.back();
}

EsdEvents detect_esd(std::span<const double> times, std::span<const double> values, double eps) {
  if (times.size() != values.size()) throw ParameterError("detect_esd: times and values differ in length");
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(kEsdPersistence)) {
    throw ParameterError("detect_esd: grid too coarse (needs at least 3 samples)");
  }
  for (double v : values) {
    if (!(v >= -kDensityTolerance && v <= 1.0 + kDensityTolerance)) {
      throw ParameterError("detect_esd: concurrence values must lie in [0, 1]");
    }
  }

  const auto zero = [&](std::size_t i) { return values[i] <= eps; };
  const auto holds = [&](std::size_t from, bool want_zero) {
    if (from + kEsdPersistence > n) return false;
    for (std::size_t k = from; k < from + kEsdPersistence; ++k) {
      if (zero(k) != want_zero) return false;
    }
    return true;
  };
  const auto crossing = [&](std::size_t i) {
    const double v0 = values[i - 1];
    const double v1 = values[i];
    return times[i - 1] + (v0 - eps) / (v0 - v1) * (times[i] - times[i - 1]);
  };

  enum class Phase { kNotYetEntangled, kAlive, kDead };
  Phase phase = zero(0) ? Phase::kNotYetEntangled : Phase::kAlive;

  EsdEvents events;
  for (std::size_t i = 1; i < n; ++i) {
    switch (phase) {
      case Phase::kNotYetEntangled:
        if (!zero(i)) phase = Phase::kAlive;
        break;
      case Phase::kAlive:
        if (!zero(i - 1) && zero(i) && holds(i, true)) {
          events.death_times.push_back(crossing(i));
          phase = Phase::kDead;
        }
        break;
      case Phase::kDead:
        if (zero(i - 1) && !zero(i) && holds(i, false)) {
          events.revival_times.push_back(crossing(i));
          phase = Phase::kAlive;
        }
        break;
    }
  }
  return events;
}

ConcurrenceSeries ConcurrenceSeries::from_values(const TimeGrid& grid, std::vector<double> values) {
  grid.validate();
  if (values.size() != static_cast<std::size_t>(grid.n_samples)) {
    throw ParameterError("concurrence series length does not match its grid");
  }
  ConcurrenceSeries s;
  s.grid = grid;
  s.values = std::move(values);
  const std::vector<double> t = grid.times();
  s.events = detect_esd(t, s.values);
  return s;
}

bool ConcurrenceSeries::lifetime_resolved() const {
  const auto lt = lifetime();
  return lt.has_value() && grid.t_end >= 2.0 * *lt;
}

}  // namespace cavent
