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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cavent/composition.hpp"
#include "cavent/entanglement.hpp"
#include "cavent/experiments.hpp"
#include "test_support.hpp"

namespace cavent {
namespace {

using testing::evolve_joint_directly;
using testing::max_abs_diff;
using testing::random_density;
using testing::random_unitary;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double max_coeff_error(const CoefficientTrajectory& a, const CoefficientTrajectory& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max({err, std::abs(a.P[i] - b.P[i]), std::abs(a.p[i] - b.p[i]),
                    std::abs(a.Q[i] - b.Q[i]), std::abs(a.q[i] - b.q[i])});
  }
  return err;
}

// Five gamma_d = 0 sets in units of g: the Fig. 2a losses, the Fig. 3
// cavity-only loss, two asymmetric underdamped sets and one overdamped set.
const std::vector<SubsystemParams> kClosedFormSets = {
    {1.0, 0.3, 0.3, 0.0}, {1.0, 0.17, 0.0, 0.0}, {1.0, 0.6, 0.1, 0.0},
    {1.0, 0.1, 0.9, 0.0}, {1.0, 5.0, 0.2, 0.0},
};
const TimeGrid kFigureGrid{20.0, 2001};

Outcome criterion1() {
  double worst = 0.0;
  for (const SubsystemParams& p : kClosedFormSets) {
    worst = std::max(worst, max_coeff_error(analytic_coefficients(p, kFigureGrid),
                                            extract_coefficients(p, TruncationSpec{}, kFigureGrid)));
  }
  return {worst <= 1e-8, fmt("5 parameter sets, gt in [0, 20]: max |extracted - analytic| = %.3g (tol 1e-8)", worst)};
}

Outcome criterion2() {
  double identity_error = 0.0;
  for (const SubsystemParams& p : kClosedFormSets) {
    const auto c = extract_coefficients(p, TruncationSpec{}, kFigureGrid);
    for (std::size_t i = 0; i < c.size(); ++i) {
      identity_error = std::max({identity_error, std::abs(c.P[i] - std::norm(c.p[i])),
                                 std::abs(c.Q[i] - std::norm(c.q[i]))});
    }
  }
  const auto d = extract_coefficients(SubsystemParams{1.0, 0.3, 0.0, 0.3}, TruncationSpec{}, kFigureGrid);
  double violation = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    violation = std::max({violation, std::abs(d.P[i] - std::norm(d.p[i])), std::abs(d.Q[i] - std::norm(d.q[i]))});
  }
  return {identity_error <= 1e-8 && violation > 1e-3,
          fmt("gamma_d = 0: max |P - |p|^2|, |Q - |q|^2| = %.3g (tol 1e-8); gamma_d = 0.3g: max violation = %.3g (needs > 1e-3)",
              identity_error, violation)};
}

Outcome criterion3() {
  double vs_formula = 0.0;
  double vs_joint = 0.0;
  const TruncationSpec trunc;
  for (const char* name : {"fig2a", "fig2b", "fig4a"}) {
    const Scenario s = preset(name);
    const SubsystemParams pa = s.params_a.in_units_of_g();
    const SubsystemParams pb = s.params_b.in_units_of_g();
    const TimeGrid grid{s.dimensionless_grid().t_end, 20};
    const auto prop_a = propagator(pa, trunc, grid);
    const auto prop_b = propagator(pb, trunc, grid);
    const auto ca = extract_coefficients(pa, trunc, grid);
    const auto cb = extract_coefficients(pb, trunc, grid);
    const JointState rho0 = initial_joint_state(s.initial, trunc);
    const auto direct = evolve_joint_directly(pa, pb, trunc, rho0.matrix, grid);
    for (int i = 0; i < grid.n_samples; ++i) {
      const JointState joint = compose_joint(prop_a, prop_b, rho0, i);
      const ComplexMatrix qq = reduce_pair(joint, PairSelector::kQubits);
      const ComplexMatrix cc = reduce_pair(joint, PairSelector::kCavities);
      vs_formula = std::max({vs_formula, max_abs_diff(qq, two_qubit_state(s.initial, ca, cb, i)),
                             max_abs_diff(cc, two_cavity_state(s.initial, ca, cb, i))});
      const JointState direct_state{direct[i], trunc};
      vs_joint = std::max({vs_joint, max_abs_diff(joint.matrix, direct[i]),
                           max_abs_diff(qq, reduce_pair(direct_state, PairSelector::kQubits)),
                           max_abs_diff(cc, reduce_pair(direct_state, PairSelector::kCavities))});
    }
  }
  return {vs_formula <= 1e-7 && vs_joint <= 1e-7,
          fmt("fig2a/fig2b/fig4a, 20 samples each: pair formula error %.3g, joint 16x16 error %.3g (tol 1e-7)",
              vs_formula, vs_joint)};
}

Outcome criterion4() {
  std::mt19937 rng(20260401);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector4d pops(u(rng), u(rng), u(rng), u(rng));
    pops /= pops.sum();
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) rho(k, k) = pops(k);
    rho(0, 3) = std::polar(std::sqrt(pops(0) * pops(3)) * u(rng), 2.0 * M_PI * u(rng));
    rho(3, 0) = std::conj(rho(0, 3));
    worst = std::max(worst, std::abs(xstate_concurrence(rho(0, 3), pops(1), pops(2)) - wootters_concurrence(rho)));
  }
  double c0_error = 0.0;
  for (const char* name : {"fig2a", "fig2b", "fig4a", "fig4b"}) {
    Scenario s = preset(name);
    s.grid.n_samples = 3;
    c0_error = std::max(c0_error, std::abs(run_scenario(s).c_q[0] - 0.96));
  }
  return {worst <= 1e-9 && c0_error <= 1e-12,
          fmt("200 random X states: max |xstate - wootters| = %.3g (tol 1e-9); alpha = 0.8 presets: max |C(0) - 0.96| = %.3g (tol 1e-12)",
              worst, c0_error)};
}

Outcome criterion5(const ScenarioTable& fig4a) {
  const ConcurrenceSeries q = fig4a.qubit_series();
  const auto death = q.lifetime();
  bool rebirth = false;
  if (death) {
    for (std::size_t k = 0; k < q.events.revival_times.size(); ++k) {
      rebirth = rebirth || (q.events.death_times[k] < q.events.revival_times[k] && q.events.revival_times[k] < *death);
    }
  }
  const bool in_band = death && *death >= 32.0 && *death <= 48.0;
  std::vector<std::pair<double, const char*>> timeline;
  for (double t : q.events.death_times) timeline.emplace_back(t, "death");
  for (double t : q.events.revival_times) timeline.emplace_back(t, "revival");
  std::sort(timeline.begin(), timeline.end());
  std::string events;
  for (const auto& [t, kind] : timeline) events += fmt(" %s %.4g", kind, t);
  return {in_band && rebirth && q.lifetime_resolved(),
          fmt("fig4a final qubit-pair death = %s ps (target 40 ps +/- 20%%, [32, 48]); death-revival before it: %s; events:%s",
              death ? fmt("%.4g", *death).c_str() : "none", rebirth ? "yes" : "no", events.c_str())};
}

Outcome criterion6(const ScenarioTable& fig4a, const ScenarioTable& fig4b) {
  const auto qa = fig4a.qubit_series(), qb = fig4b.qubit_series();
  const auto ca = fig4a.cavity_series(), cb = fig4b.cavity_series();
  const auto show = [](const std::optional<double>& v) { return v ? fmt("%.4g", *v) : std::string("none"); };
  const bool resolved = qa.lifetime_resolved() && qb.lifetime_resolved() && ca.lifetime_resolved() && cb.lifetime_resolved();
  const bool ok = resolved && *qb.lifetime() > *qa.lifetime() && *cb.lifetime() > *ca.lifetime();
  return {ok, fmt("qubit pair: fig4a %s ps < fig4b %s ps; cavity pair: fig4a %s ps < fig4b %s ps",
                  show(qa.lifetime()).c_str(), show(qb.lifetime()).c_str(), show(ca.lifetime()).c_str(),
                  show(cb.lifetime()).c_str())};
}

Outcome criterion7(const ScenarioTable& fig2a, const ScenarioTable& fig2b) {
  const auto deaths = fig2b.qubit_series().events.death_times;
  const bool esd = !deaths.empty() && std::isfinite(deaths.front());
  bool reduced = true;
  std::string samples;
  for (double gt : {4.0, 6.0, 8.0, 10.0}) {
    const auto i = static_cast<std::size_t>(std::lround(gt / fig2a.native_grid.spacing()));
    reduced = reduced && fig2b.c_c[i] < fig2a.c_c[i];
    samples += fmt(" gt=%g: %.4g vs %.4g;", gt, fig2b.c_c[i], fig2a.c_c[i]);
  }
  return {esd && reduced,
          fmt("fig2b qubit-pair deaths: %zu (first at gt = %.4g); cavity pair with dephasing vs without:%s",
              deaths.size(), esd ? deaths.front() : NAN, samples.c_str())};
}

Outcome criterion8(const std::vector<std::pair<Scenario, ScenarioTable>>& runs) {
  double worst_herm = 0.0, worst_trace = 0.0, min_eig = INFINITY;
  const auto inspect = [&](const ComplexMatrix& rho) {
    const DensityReport r = inspect_density(rho);
    worst_herm = std::max(worst_herm, r.hermiticity_error);
    worst_trace = std::max(worst_trace, r.trace_error);
    min_eig = std::min(min_eig, r.min_eigenvalue);
  };
  double halving = 0.0;
  double unitary = 0.0;
  double excitation_rise = 0.0;
  std::mt19937 rng(20260402);
  const TruncationSpec trunc;

  for (const auto& [s, table] : runs) {
    const SubsystemParams p = s.params_a.in_units_of_g();
    const TimeGrid grid = s.dimensionless_grid();

    // Subsystem states from both extraction initial states.
    ComplexMatrix plus = ComplexMatrix::Zero(4, 4);
    const Eigen::Index e0 = trunc.index(true, 0), g0 = trunc.index(false, 0);
    plus(e0, e0) = plus(e0, g0) = plus(g0, e0) = plus(g0, g0) = 0.5;
    for (const ComplexMatrix& rho0 : {basis_projector(trunc, true, 0), plus}) {
      for (const auto& rho : evolve_subsystem(p, trunc, rho0, grid)) inspect(rho);
    }

    // Pair states behind every emitted table row.
    for (std::size_t i = 0; i < table.size(); ++i) {
      const int k = static_cast<int>(i);
      const ComplexMatrix qq = two_qubit_state(s.initial, table.coeffs_a, table.coeffs_b, k);
      const ComplexMatrix cc = two_cavity_state(s.initial, table.coeffs_a, table.coeffs_b, k);
      inspect(qq);
      inspect(cc);
      if (i % 50 == 0) {
        for (const ComplexMatrix* rho : {&qq, &cc}) {
          const ComplexMatrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
          ComplexMatrix rotated = u * *rho * u.adjoint();
          rotated = 0.5 * (rotated + rotated.adjoint());
          unitary = std::max(unitary, std::abs(wootters_concurrence(rotated) - wootters_concurrence(*rho)));
        }
      }
    }

    // Step halving on every reported column.
    RunOptions fine;
    fine.integrator.refinement = 2;
    const ScenarioTable halved = run_scenario(s, fine);
    for (std::size_t i = 0; i < table.size(); ++i) {
      halving = std::max({halving, std::abs(halved.c_q[i] - table.c_q[i]), std::abs(halved.c_c[i] - table.c_c[i]),
                          std::abs(halved.q_t[i] - table.q_t[i])});
    }
    halving = std::max({halving, max_coeff_error(halved.coeffs_a, table.coeffs_a)});

    // Total excitation of the composed joint state, every sample.
    const auto prop = propagator(p, trunc, grid);
    const JointState rho0 = initial_joint_state(s.initial, trunc);
    double previous = total_excitation(rho0);
    for (int i = 1; i < grid.n_samples; ++i) {
      const JointState joint = compose_joint(prop, prop, rho0, i);
      if (i % 100 == 0) inspect(joint.matrix);
      const double now = total_excitation(joint);
      excitation_rise = std::max(excitation_rise, now - previous);
      previous = now;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = random_density(rng, 4);
    const ComplexMatrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    ComplexMatrix rotated = u * rho * u.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    unitary = std::max(unitary, std::abs(wootters_concurrence(rotated) - wootters_concurrence(rho)));
  }

  const bool ok = worst_herm <= 1e-9 && worst_trace <= 1e-9 && min_eig >= -1e-9 && halving <= 1e-8 &&
                  unitary <= 1e-9 && excitation_rise <= 1e-12;
  return {ok, fmt("hermiticity %.3g, trace %.3g, min eigenvalue %.3g (tol 1e-9); step halving %.3g (tol 1e-8); "
                  "local-unitary %.3g (tol 1e-9); max excitation increase %.3g",
                  worst_herm, worst_trace, min_eig, halving, unitary, excitation_rise)};
}

}  // namespace
}  // namespace cavent

int main() {
  using namespace cavent;
  std::vector<std::pair<Scenario, ScenarioTable>> runs;
  for (const auto& name : preset_names()) {
    const Scenario s = preset(name);
    runs.emplace_back(s, run_scenario(s));
  }
  const auto table = [&](const char* name) -> const ScenarioTable& {
    return std::find_if(runs.begin(), runs.end(), [&](const auto& r) { return r.first.name == name; })->second;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 analytic-numeric agreement", criterion1},
      {"2 closed-form identities", criterion2},
      {"3 composition oracle", criterion3},
      {"4 concurrence oracle", criterion4},
      {"5 fig4a lifetime near 40 ps after a rebirth", [&] { return criterion5(table("fig4a")); }},
      {"6 fig4b outlives fig4a", [&] { return criterion6(table("fig4a"), table("fig4b")); }},
      {"7 dephasing causes ESD and reduces cavity entanglement", [&] { return criterion7(table("fig2a"), table("fig2b")); }},
      {"8 property suite", [&] { return criterion8(runs); }},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
