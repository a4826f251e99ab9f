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

#ifndef CAVENT_ENTANGLEMENT_HPP_
#define CAVENT_ENTANGLEMENT_HPP_

#include <optional>
#include <span>
#include <vector>

#include "cavent/dynamics.hpp"

namespace cavent {

/// Wootters concurrence of a two-qubit density matrix.
double wootters_concurrence(const ComplexMatrix& rho);

/// max{0, 2|rho14| - 2 sqrt(rho22 rho33)} for X-states with rho23 = 0.
double xstate_concurrence(Complex rho14, double rho22, double rho33);

struct FluxSeries {
  TimeGrid grid;
  std::vector<double> photon_number;
  std::vector<double> output_flux;
};

/// Output photon flux gamma_c * Q_t (no input field).
FluxSeries output_flux(const CoefficientTrajectory& coeffs, double gamma_c);

/// Zero threshold and persistence used for sudden-death detection.
inline constexpr double kEsdThreshold = 1e-6;
inline constexpr int kEsdPersistence = 3;

struct EsdEvents {
  std::vector<double> death_times;
  std::vector<double> revival_times;

  /// Last death with no later revival, if any.
  std::optional<double> final_death() const;
};

/// Finds sudden deaths (a crossing from > eps to <= eps that then holds for
/// kEsdPersistence samples) and revivals (the converse, only after a death).
/// Crossing times are linearly interpolated. A series that starts at zero
/// is not dead until it has first become positive.
EsdEvents detect_esd(std::span<const double> times, std::span<const double> values,
                     double eps = kEsdThreshold);

struct ConcurrenceSeries {
  TimeGrid grid;
  std::vector<double> values;
  EsdEvents events;

  static ConcurrenceSeries from_values(const TimeGrid& grid, std::vector<double> values);

  /// Entanglement lifetime: the final death time.
  std::optional<double> lifetime() const { return events.final_death(); }
  /// True if the grid reaches at least twice the lifetime.
  bool lifetime_resolved() const;
};

}  // namespace cavent

#endif  // CAVENT_ENTANGLEMENT_HPP_
