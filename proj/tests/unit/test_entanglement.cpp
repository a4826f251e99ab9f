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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cavent/composition.hpp"
#include "cavent/entanglement.hpp"
#include "test_support.hpp"

namespace cavent {
namespace {

using testing::fig2a_params;
using testing::fig2b_params;
using testing::random_density;
using testing::random_unitary;

ComplexMatrix pure(const ComplexVector& psi) { return psi * psi.adjoint(); }

ComplexMatrix random_x_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector4d pops(u(rng), u(rng), u(rng), u(rng));
  pops /= pops.sum();
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) rho(i, i) = pops(i);
  const double bound = std::sqrt(pops(0) * pops(3));
  rho(0, 3) = std::polar(bound * u(rng), 2.0 * M_PI * u(rng));
  rho(3, 0) = std::conj(rho(0, 3));
  return rho;
}

std::vector<double> qubit_concurrence(const SubsystemParams& p, const TimeGrid& grid, double alpha) {
  const InitialJointState init = InitialJointState::with_phase(StateFamily::kTwoExcitation, alpha);
  const auto c = extract_coefficients(p, TruncationSpec{}, grid);
  std::vector<double> out;
  for (int i = 0; i < grid.n_samples; ++i) out.push_back(wootters_concurrence(two_qubit_state(init, c, c, i)));
  return out;
}

std::vector<double> cavity_concurrence(const SubsystemParams& p, const TimeGrid& grid, double alpha) {
  const InitialJointState init = InitialJointState::with_phase(StateFamily::kTwoExcitation, alpha);
  const auto c = extract_coefficients(p, TruncationSpec{}, grid);
  std::vector<double> out;
  for (int i = 0; i < grid.n_samples; ++i) out.push_back(wootters_concurrence(two_cavity_state(init, c, c, i)));
  return out;
}

TEST(Concurrence, BellStateIsMaximal) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(wootters_concurrence(pure(psi)), 1.0, 1e-12);
}

TEST(Concurrence, ProductStatesAreSeparable) {
  for (int k = 0; k < 4; ++k) {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(k) = 1.0;
    EXPECT_NEAR(wootters_concurrence(pure(psi)), 0.0, 1e-12);
  }
  EXPECT_NEAR(wootters_concurrence(ComplexMatrix::Identity(4, 4) / 4.0), 0.0, 1e-12);
}

TEST(Concurrence, InitialPsiState) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(3) = 0.8;  // |00>
  psi(0) = 0.6;  // |11>
  EXPECT_NEAR(wootters_concurrence(pure(psi)), 0.96, 1e-12);
}

TEST(Concurrence, RejectsNonDensityInput) {
  EXPECT_THROW(wootters_concurrence(ComplexMatrix::Identity(4, 4)), InvalidStateError);
  EXPECT_THROW(wootters_concurrence(ComplexMatrix::Identity(2, 2) / 2.0), DimensionError);
}

TEST(XState, ClosedFormExamples) {
  EXPECT_NEAR(xstate_concurrence(0.48, 0.0, 0.0), 0.96, 1e-15);
  EXPECT_EQ(xstate_concurrence(0.1, 0.1, 0.1), 0.0);
  EXPECT_THROW(xstate_concurrence(0.1, -0.1, 0.1), InvalidStateError);
}

TEST(XState, AgreesWithWoottersOnRandomXStates) {
  std::mt19937 rng(401);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix rho = random_x_state(rng);
    EXPECT_NEAR(xstate_concurrence(rho(0, 3), rho(1, 1).real(), rho(2, 2).real()),
                wootters_concurrence(rho), 1e-9);
  }
}

TEST(XState, AgreesWithWoottersOnPairStatesFromRandomCoefficients) {
  std::mt19937 rng(409);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    CoefficientTrajectory a, b;
    a.grid = b.grid = TimeGrid{1.0, 2};
    for (auto* c : {&a, &b}) {
      const double pop = u(rng), pop2 = u(rng);
      // |p|^2 <= P is what any combination of the three channels produces.
      c->P = {pop, pop};
      c->p = {std::polar(std::sqrt(pop) * u(rng), 0.0), 0.0};
      c->Q = {pop2, pop2};
      c->q = {std::polar(std::sqrt(pop2) * u(rng), -M_PI / 2.0), 0.0};
    }
    const auto init = InitialJointState::with_phase(StateFamily::kTwoExcitation, u(rng), 6.0 * u(rng));
    for (const ComplexMatrix& rho : {two_qubit_state(init, a, b, 0), two_cavity_state(init, a, b, 0)}) {
      EXPECT_NEAR(xstate_concurrence(rho(0, 3), rho(1, 1).real(), rho(2, 2).real()),
                  wootters_concurrence(rho), 1e-9);
    }
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937 rng(419);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix rho = trial % 2 ? random_density(rng, 4) : random_x_state(rng);
    const ComplexMatrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    ComplexMatrix rotated = u * rho * u.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    EXPECT_NEAR(wootters_concurrence(rotated), wootters_concurrence(rho), 1e-9);
  }
}

TEST(Flux, ClosedCavityEmitsNothing) {
  const auto c = extract_coefficients(SubsystemParams{1.0, 0.0, 0.3, 0.1}, TruncationSpec{}, TimeGrid{10.0, 101});
  for (double f : output_flux(c, 0.0).output_flux) EXPECT_EQ(f, 0.0);
}

TEST(Flux, StartsAtZeroAndPeaksWithPhotonNumber) {
  const TruncationSpec trunc;
  const TimeGrid grid{20.0, 2001};
  const SubsystemParams p = fig2a_params();
  const FluxSeries f = output_flux(extract_coefficients(p, trunc, grid), p.gamma_c);
  EXPECT_EQ(f.output_flux.front(), 0.0);

  // Integrator oracle: <a^dag a> from a direct evolution of |1_q 0_c>.
  const auto states = evolve_subsystem(p, trunc, basis_projector(trunc, true, 0), grid);
  const ComplexMatrix n = subsystem_operators(trunc).photon_number;
  std::vector<double> photons;
  for (const auto& rho : states) photons.push_back((n * rho).trace().real());
  const auto peak = std::max_element(f.output_flux.begin(), f.output_flux.end()) - f.output_flux.begin();
  const auto oracle = std::max_element(photons.begin(), photons.end()) - photons.begin();
  EXPECT_EQ(peak, oracle);
  for (std::size_t i = 0; i < photons.size(); ++i) EXPECT_NEAR(f.output_flux[i], p.gamma_c * photons[i], 1e-12);
}

TEST(Esd, ZeroSeriesHasNoEvents) {
  const TimeGrid grid{1.0, 11};
  const std::vector<double> zeros(11, 0.0);
  const EsdEvents e = detect_esd(grid.times(), zeros);
  EXPECT_TRUE(e.death_times.empty());
  EXPECT_TRUE(e.revival_times.empty());
  EXPECT_FALSE(e.final_death().has_value());
}

TEST(Esd, LinearRampDiesAtHalf) {
  const TimeGrid grid{1.0, 1001};
  std::vector<double> v;
  for (double t : grid.times()) v.push_back(std::max(0.0, 0.5 - t));
  const EsdEvents e = detect_esd(grid.times(), v);
  ASSERT_EQ(e.death_times.size(), 1u);
  EXPECT_TRUE(e.revival_times.empty());
  EXPECT_NEAR(e.death_times[0], 0.5, grid.spacing());
  EXPECT_NEAR(*e.final_death(), 0.5, grid.spacing());
}

TEST(Esd, GrazingDipsAreIgnored) {
  std::vector<double> v(50, 0.5);
  v[10] = 0.0;
  v[20] = v[21] = 0.0;
  const TimeGrid grid{4.9, 50};
  const EsdEvents e = detect_esd(grid.times(), v);
  EXPECT_TRUE(e.death_times.empty());
}

TEST(Esd, DeathRevivalAndFinalDeath) {
  const TimeGrid grid{10.0, 1001};
  std::vector<double> v;
  for (double t : grid.times()) {
    v.push_back(t < 2.0 ? 0.5 * (2.0 - t) / 2.0 : t < 3.0 ? 0.0 : t < 6.0 ? 0.1 * std::sin(M_PI * (t - 3.0) / 3.0) : 0.0);
  }
  const EsdEvents e = detect_esd(grid.times(), v);
  ASSERT_EQ(e.death_times.size(), 2u);
  ASSERT_EQ(e.revival_times.size(), 1u);
  EXPECT_NEAR(e.death_times[0], 2.0, grid.spacing());
  EXPECT_NEAR(e.revival_times[0], 3.0, grid.spacing());
  EXPECT_NEAR(*e.final_death(), 6.0, grid.spacing());
}

TEST(Esd, RevivalWithoutFinalDeathHasNoLifetime) {
  std::vector<double> v = {0.5, 0.2, 0.0, 0.0, 0.0, 0.1, 0.2, 0.3};
  std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7};
  const EsdEvents e = detect_esd(t, v);
  EXPECT_EQ(e.death_times.size(), 1u);
  EXPECT_EQ(e.revival_times.size(), 1u);
  EXPECT_FALSE(e.final_death().has_value());
}

TEST(Esd, LateOnsetSeriesCountsOnlyAfterBirth) {
  // Cavity-like series: zero at t = 0, entangled later, then dies.
  std::vector<double> v = {0.0, 0.0, 0.2, 0.4, 0.2, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const EsdEvents e = detect_esd(t, v);
  ASSERT_EQ(e.death_times.size(), 1u);
  EXPECT_TRUE(e.revival_times.empty());
  EXPECT_NEAR(e.death_times[0], 5.0, 1e-5);
}

TEST(Esd, RejectsBadInput) {
  const std::vector<double> t2 = {0.0, 1.0}, v2 = {0.5, 0.0};
  EXPECT_THROW(detect_esd(t2, v2), ParameterError);
  const std::vector<double> t3 = {0.0, 1.0, 2.0}, v3 = {0.5, 1.5, 0.0};
  EXPECT_THROW(detect_esd(t3, v3), ParameterError);
  EXPECT_THROW(detect_esd(t3, v2), ParameterError);
}

TEST(Esd, DephasingCausesSuddenDeath) {
  const TimeGrid grid{20.0, 2001};
  const auto c = qubit_concurrence(fig2b_params(), grid, 0.8);
  const EsdEvents e = detect_esd(grid.times(), c);
  ASSERT_FALSE(e.death_times.empty());
  EXPECT_GT(e.death_times[0], 0.0);
  EXPECT_LT(e.death_times[0], 20.0);
}

TEST(Dynamics, ConcurrenceVanishesAtLateTimes) {
  const TimeGrid grid{200.0, 2001};
  for (const SubsystemParams& p : {fig2a_params(), fig2b_params(), SubsystemParams{1.0, 0.17, 0.0, 0.0}}) {
    EXPECT_LT(qubit_concurrence(p, grid, 0.8).back(), 1e-6);
    EXPECT_LT(cavity_concurrence(p, grid, 0.8).back(), 1e-6);
  }
}

TEST(Dynamics, DephasingReducesIntegratedQubitConcurrence) {
  const TimeGrid grid{20.0, 2001};
  double previous = INFINITY;
  for (double gamma_d : {0.0, 0.1, 0.3, 1.0}) {
    const auto c = qubit_concurrence(SubsystemParams{1.0, 0.17, 0.0, gamma_d}, grid, 1.0 / std::sqrt(2.0));
    double integral = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) integral += 0.5 * (c[i] + c[i - 1]) * grid.spacing();
    EXPECT_LE(integral, previous) << "gamma_d = " << gamma_d;
    previous = integral;
  }
}

TEST(Dynamics, QubitDephasingReducesCavityConcurrence) {
  const TimeGrid grid{10.0, 11};
  const auto clean = cavity_concurrence(SubsystemParams{1.0, 0.3, 0.0, 0.0}, grid, 0.8);
  const auto noisy = cavity_concurrence(SubsystemParams{1.0, 0.3, 0.0, 0.3}, grid, 0.8);
  for (int i : {2, 4, 6, 8, 10}) EXPECT_LT(noisy[i], clean[i]) << "gt = " << grid.at(i);
}

TEST(Series, LifetimeResolution) {
  const TimeGrid grid{1.0, 101};
  std::vector<double> v;
  for (double t : grid.times()) v.push_back(std::max(0.0, 0.3 - t));
  const ConcurrenceSeries s = ConcurrenceSeries::from_values(grid, v);
  ASSERT_TRUE(s.lifetime().has_value());
  EXPECT_TRUE(s.lifetime_resolved());
  EXPECT_THROW(ConcurrenceSeries::from_values(grid, {0.1, 0.2}), ParameterError);
}

}  // namespace
}  // namespace cavent
