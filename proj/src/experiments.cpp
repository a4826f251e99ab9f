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

#include "cavent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace cavent {

namespace {

// Quantum-dot exciton and cavity energy, ~1.3 eV.
constexpr double kDotEnergyMicroEv = 1.3e6;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void check_params(const SubsystemParams& p) {
  const std::pair<const char*, double> rates[] = {
      {"gamma_c", p.gamma_c}, {"gamma_q", p.gamma_q}, {"gamma_d", p.gamma_d}};
  if (!(p.g > 0.0) || !std::isfinite(p.g)) throw ConfigError("g", "must be positive, got " + num(p.g));
  for (const auto& [key, value] : rates) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw ConfigError(key, "must be non-negative, got " + num(value));
    }
  }
  try {
    p.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("omega0", e.what());
  }
}

SubsystemParams rescaled(SubsystemParams p, double g_ref) {
  p.g /= g_ref;
  p.gamma_c /= g_ref;
  p.gamma_q /= g_ref;
  p.gamma_d /= g_ref;
  p.omega0 /= g_ref;
  p.omega_c /= g_ref;
  return p;
}

}  // namespace

void Scenario::validate() const {
  check_params(params_a);
  check_params(params_b);
  if (!(initial.alpha >= 0.0 && initial.alpha <= 1.0)) {
    throw ConfigError("alpha", "must lie in [0, 1], got " + num(initial.alpha));
  }
  try {
    initial.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("beta_phase", e.what());
  }
  if (!(grid.t_end > 0.0) || !std::isfinite(grid.t_end)) {
    throw ConfigError("t_end", "must be positive, got " + num(grid.t_end));
  }
  if (grid.n_samples < 3) {
    throw ConfigError("n_samples", "must be at least 3, got " + std::to_string(grid.n_samples));
  }
  if (trunc.n_max < 1) throw ConfigError("n_max", "must be at least 1");
}

TimeGrid Scenario::dimensionless_grid() const {
  if (unit_mode == UnitMode::kDimensionless) return grid;
  return TimeGrid{time_to_dimensionless(grid.t_end, params_a.g, UnitContext{UnitMode::kPhysical}),
                  grid.n_samples};
}

ScenarioTable run_scenario(const Scenario& s, const RunOptions& opts) {
  s.validate();
  const double g_ref = s.params_a.g;
  const SubsystemParams pa = rescaled(s.params_a, g_ref);
  const SubsystemParams pb = rescaled(s.params_b, g_ref);
  const TimeGrid grid_g = s.dimensionless_grid();
  const bool physical = s.unit_mode == UnitMode::kPhysical;
  const UnitContext ctx{s.unit_mode};

  ScenarioTable table;
  table.unit_mode = s.unit_mode;
  table.native_grid = s.grid;
  for (const SubsystemParams* p : {&s.params_a, &s.params_b}) {
    for (auto& w : p->rwa_warnings()) table.warnings.push_back(std::move(w));
  }

  table.coeffs_a = extract_coefficients(pa, s.trunc, grid_g, Frame::kRotating, opts.integrator);
  table.coeffs_b = pb == pa ? table.coeffs_a
                            : extract_coefficients(pb, s.trunc, grid_g, Frame::kRotating, opts.integrator);

  // Flux per gt, converted to photons per ps in physical mode.
  const FluxSeries flux = output_flux(table.coeffs_a, pa.gamma_c);
  const double flux_scale = physical ? g_ref / UnitContext::hbar : 1.0;

  const std::size_t n = static_cast<std::size_t>(grid_g.n_samples);
  table.t_g.reserve(n);
  table.c_q.reserve(n);
  table.c_c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = static_cast<int>(i);
    const double tg = grid_g.at(k);
    table.t_g.push_back(tg);
    if (physical) table.t_ps.push_back(time_to_physical(tg, g_ref, ctx));
    table.c_q.push_back(wootters_concurrence(two_qubit_state(s.initial, table.coeffs_a, table.coeffs_b, k)));
    table.c_c.push_back(wootters_concurrence(two_cavity_state(s.initial, table.coeffs_a, table.coeffs_b, k)));
    table.q_t.push_back(flux.photon_number[i]);
    table.flux.push_back(flux.output_flux[i] * flux_scale);
  }
  return table;
}

namespace {

void append_number(std::string& out, double v) {
  if (v == 0.0) {
    out += '0';  // also folds -0
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}

void append_rows(std::string& out, const ScenarioTable& t, const std::string& prefix) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += prefix;
    append_number(out, t.t_g[i]);
    out += ',';
    if (!t.t_ps.empty()) append_number(out, t.t_ps[i]);
    for (const auto* col : {&t.c_q, &t.c_c, &t.q_t, &t.flux}) {
      out += ',';
      append_number(out, (*col)[i]);
    }
    out += '\n';
  }
}

}  // namespace

std::string to_csv(const ScenarioTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  append_rows(out, table, "");
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2a", "fig2b", "fig3", "fig4a", "fig4b"};
  return names;
}

Scenario preset(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  const auto dimensionless = [&](double gamma_c, double gamma_q, double gamma_d, double alpha) {
    s.params_a = SubsystemParams{1.0, gamma_c, gamma_q, gamma_d, 0.0, 0.0};
    s.params_b = s.params_a;
    s.initial = InitialJointState::with_phase(StateFamily::kTwoExcitation, alpha);
    s.unit_mode = UnitMode::kDimensionless;
    s.grid = TimeGrid{20.0, 2001};
  };
  const auto physical = [&](double g, double gamma_c, double gamma_q, double gamma_d, double t_end_ps,
                            int n_samples) {
    s.params_a = SubsystemParams{g, gamma_c, gamma_q, gamma_d, kDotEnergyMicroEv, kDotEnergyMicroEv};
    s.params_b = s.params_a;
    s.initial = InitialJointState::with_phase(StateFamily::kTwoExcitation, 0.8);
    s.unit_mode = UnitMode::kPhysical;
    s.grid = TimeGrid{t_end_ps, n_samples};
  };

  if (name == "fig2a") {
    dimensionless(0.3, 0.3, 0.0, 0.8);
  } else if (name == "fig2b") {
    dimensionless(0.3, 0.0, 0.3, 0.8);
  } else if (name == "fig3") {
    dimensionless(0.17, 0.0, 0.0, 1.0 / std::sqrt(2.0));
  } else if (name == "fig4a") {
    physical(110.0, 100.0, 10.0, 30.0, 100.0, 4001);
  } else if (name == "fig4b") {
    // The cavity-pair lifetime here is ~70 ps, so the grid runs to 200 ps to
    // keep at least twice the lifetime in view.
    physical(16.0, 20.0, 4.0, 12.0, 200.0, 8001);
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
  return s;
}

namespace {

std::string trim(std::string_view v) {
  const auto b = v.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = v.find_last_not_of(" \t\r");
  return std::string(v.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  if (value.empty()) throw ConfigError(key, "missing value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key, "not a finite number: '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v) || v < 0 || v > 1e8) throw ConfigError(key, "not a valid count: '" + value + "'");
  return static_cast<int>(v);
}

UnitMode parse_unit_mode(const std::string& value) {
  if (value == "dimensionless" || value == "dimensionless-in-g") return UnitMode::kDimensionless;
  if (value == "physical" || value == "physical-ueV" || value == "physical-μeV") return UnitMode::kPhysical;
  throw ConfigError("unit_mode", "expected dimensionless or physical, got '" + value + "'");
}

}  // namespace

Scenario parse_config(std::istream& in, std::string name) {
  static const std::set<std::string> kKeys = {"g",     "gamma_c",    "gamma_q",   "gamma_d",
                                              "alpha", "beta_phase", "unit_mode", "t_end",
                                              "n_samples", "family"};
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!kKeys.count(key)) throw ConfigError(key.empty() ? "line " + std::to_string(line_no) : key, "unknown key");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "given more than once");
  }

  const auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  Scenario s;
  s.name = std::move(name);
  s.unit_mode = get("unit_mode") ? parse_unit_mode(*get("unit_mode")) : UnitMode::kDimensionless;
  const bool physical = s.unit_mode == UnitMode::kPhysical;

  SubsystemParams p;
  if (const auto* v = get("g")) {
    p.g = parse_double("g", *v);
  } else if (physical) {
    throw ConfigError("g", "required in physical mode");
  }
  if (const auto* v = get("gamma_c")) p.gamma_c = parse_double("gamma_c", *v);
  if (const auto* v = get("gamma_q")) p.gamma_q = parse_double("gamma_q", *v);
  if (const auto* v = get("gamma_d")) p.gamma_d = parse_double("gamma_d", *v);
  s.params_a = p;
  s.params_b = p;

  StateFamily family = StateFamily::kTwoExcitation;
  if (const auto* v = get("family")) {
    try {
      family = parse_family(*v);
    } catch (const ParameterError& e) {
      throw ConfigError("family", e.what());
    }
  }
  const double alpha = get("alpha") ? parse_double("alpha", *get("alpha")) : 0.8;
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1], got " + num(alpha));
  const double phase = get("beta_phase") ? parse_double("beta_phase", *get("beta_phase")) : 0.0;
  s.initial = InitialJointState::with_phase(family, alpha, phase);

  s.grid.t_end = get("t_end") ? parse_double("t_end", *get("t_end")) : (physical ? 100.0 : 20.0);
  s.grid.n_samples = get("n_samples") ? parse_int("n_samples", *get("n_samples")) : (physical ? 4001 : 2001);

  s.validate();
  return s;
}

Scenario parse_config_text(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_config(in, std::move(name));
}

SweptParameter parse_swept_parameter(std::string_view name) {
  if (name == "gamma_d") return SweptParameter::kGammaD;
  if (name == "gamma_c") return SweptParameter::kGammaC;
  if (name == "gamma_q") return SweptParameter::kGammaQ;
  if (name == "alpha") return SweptParameter::kAlpha;
  throw ConfigError("param", "cannot sweep '" + std::string(name) + "'");
}

std::string_view swept_parameter_name(SweptParameter p) {
  switch (p) {
    case SweptParameter::kGammaD: return "gamma_d";
    case SweptParameter::kGammaC: return "gamma_c";
    case SweptParameter::kGammaQ: return "gamma_q";
    case SweptParameter::kAlpha: return "alpha";
  }
  return "";
}

Scenario with_swept_value(const Scenario& base, SweptParameter p, double value) {
  Scenario s = base;
  for (SubsystemParams* params : {&s.params_a, &s.params_b}) {
    switch (p) {
      case SweptParameter::kGammaD: params->gamma_d = value; break;
      case SweptParameter::kGammaC: params->gamma_c = value; break;
      case SweptParameter::kGammaQ: params->gamma_q = value; break;
      case SweptParameter::kAlpha: break;
    }
  }
  if (p == SweptParameter::kAlpha) {
    if (!(value >= 0.0 && value <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1], got " + num(value));
    const double phase = std::arg(base.initial.beta);
    s.initial = InitialJointState::with_phase(base.initial.family, value, phase);
  }
  return s;
}

void SweepSpec::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to)) throw ConfigError("from", "sweep bounds must be finite");
  if (from > to) throw ConfigError("from", "must not exceed 'to'");
  if (steps < 2) throw ConfigError("steps", "must be at least 2");
  base.validate();
}

std::vector<double> SweepSpec::values() const {
  validate();
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) v[i] = from + (to - from) * i / (steps - 1);
  v.back() = to;
  return v;
}

SweepResult run_sweep_values(const Scenario& base, SweptParameter p, std::vector<double> values,
                             const RunOptions& opts) {
  SweepResult result;
  result.parameter = p;
  result.values = std::move(values);
  std::vector<Scenario> scenarios;
  scenarios.reserve(result.values.size());
  for (double v : result.values) {
    scenarios.push_back(with_swept_value(base, p, v));
    scenarios.back().validate();
  }
  result.rows.resize(scenarios.size());

  // Rows are independent; each worker writes only its own slot.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(scenarios.size());
  const auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        result.rows[i] = run_scenario(scenarios[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), scenarios.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

SweepResult run_sweep(const SweepSpec& spec, const RunOptions& opts) {
  return run_sweep_values(spec.base, spec.parameter, spec.values(), opts);
}

std::string to_csv(const SweepResult& sweep) {
  std::string out(swept_parameter_name(sweep.parameter));
  out += ',';
  out += kCsvHeader;
  out += '\n';
  for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
    std::string prefix;
    append_number(prefix, sweep.values[r]);
    prefix += ',';
    append_rows(out, sweep.rows[r], prefix);
  }
  return out;
}

double time_integral(const std::vector<double>& t, const std::vector<double>& values) {
  if (t.size() != values.size()) throw ParameterError("time_integral: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (values[i] + values[i - 1]) * (t[i] - t[i - 1]);
  return acc;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

namespace {

double max_coeff_difference(const CoefficientTrajectory& a, const CoefficientTrajectory& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max({d, std::abs(a.P[i] - b.P[i]), std::abs(a.Q[i] - b.Q[i]), std::abs(a.p[i] - b.p[i]),
                  std::abs(a.q[i] - b.q[i])});
  }
  return d;
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s, const ScenarioTable& table) {
  ValidationReport report;
  const auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const double g_ref = s.params_a.g;
  const TimeGrid grid_g = s.dimensionless_grid();

  // Subsystem states behind the coefficient extraction.
  double worst_herm = 0.0, worst_trace = 0.0, worst_eig = 0.0;
  for (const SubsystemParams& raw : {s.params_a, s.params_b}) {
    const SubsystemParams p = rescaled(raw, g_ref);
    const TruncationSpec& tr = s.trunc;
    ComplexMatrix excited = basis_projector(tr, true, 0);
    ComplexMatrix plus = ComplexMatrix::Zero(tr.dim(), tr.dim());
    const Eigen::Index e0 = tr.index(true, 0), g0 = tr.index(false, 0);
    plus(e0, e0) = plus(e0, g0) = plus(g0, e0) = plus(g0, g0) = 0.5;
    for (const ComplexMatrix& rho0 : {excited, plus}) {
      for (const ComplexMatrix& rho : evolve_subsystem(p, tr, rho0, grid_g)) {
        const DensityReport r = inspect_density(rho);
        worst_herm = std::max(worst_herm, r.hermiticity_error);
        worst_trace = std::max(worst_trace, r.trace_error);
        worst_eig = std::min(worst_eig, r.min_eigenvalue);
      }
    }
  }
  add("subsystem states are density matrices",
      worst_herm <= kDensityTolerance && worst_trace <= kDensityTolerance && worst_eig >= -kDensityTolerance,
      "max hermiticity error " + num(worst_herm) + ", max trace error " + num(worst_trace) +
          ", min eigenvalue " + num(worst_eig));

  bool ranges_ok = true;
  std::string range_detail = "all samples in range";
  for (const auto* c : {&table.coeffs_a, &table.coeffs_b}) {
    try {
      c->validate();
    } catch (const InvalidStateError& e) {
      ranges_ok = false;
      range_detail = e.what();
    }
  }
  add("coefficient ranges", ranges_ok, range_detail);

  if (s.params_a.gamma_d == 0.0) {
    double d = 0.0;
    for (std::size_t i = 0; i < table.coeffs_a.size(); ++i) {
      d = std::max({d, std::abs(table.coeffs_a.P[i] - std::norm(table.coeffs_a.p[i])),
                    std::abs(table.coeffs_a.Q[i] - std::norm(table.coeffs_a.q[i]))});
    }
    add("P = |p|^2 and Q = |q|^2 without dephasing", d <= 1e-8, "max deviation " + num(d));
  }

  double pair_herm = 0.0, pair_trace = 0.0, pair_eig = 0.0, x_vs_w = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int k = static_cast<int>(i);
    for (const ComplexMatrix& rho : {two_qubit_state(s.initial, table.coeffs_a, table.coeffs_b, k),
                                     two_cavity_state(s.initial, table.coeffs_a, table.coeffs_b, k)}) {
      const DensityReport r = inspect_density(rho);
      pair_herm = std::max(pair_herm, r.hermiticity_error);
      pair_trace = std::max(pair_trace, r.trace_error);
      pair_eig = std::min(pair_eig, r.min_eigenvalue);
      if (s.initial.family == StateFamily::kTwoExcitation) {
        const double x = xstate_concurrence(rho(0, 3), std::max(0.0, rho(1, 1).real()),
                                            std::max(0.0, rho(2, 2).real()));
        x_vs_w = std::max(x_vs_w, std::abs(x - wootters_concurrence(rho)));
      }
    }
  }
  add("pair states are density matrices",
      pair_herm <= kDensityTolerance && pair_trace <= kDensityTolerance && pair_eig >= -kDensityTolerance,
      "max hermiticity error " + num(pair_herm) + ", max trace error " + num(pair_trace) +
          ", min eigenvalue " + num(pair_eig));
  if (s.initial.family == StateFamily::kTwoExcitation) {
    add("X-state concurrence matches Wootters", x_vs_w <= 1e-9, "max difference " + num(x_vs_w));
  }

  IntegratorOptions halved;
  halved.refinement = 2;
  const CoefficientTrajectory fine = extract_coefficients(rescaled(s.params_a, g_ref), s.trunc, grid_g,
                                                          Frame::kRotating, halved);
  const double conv = max_coeff_difference(fine, table.coeffs_a);
  add("step-halving convergence", conv <= 1e-8, "max change " + num(conv));

  bool interleave = true;
  for (const ConcurrenceSeries& series : {table.qubit_series(), table.cavity_series()}) {
    const auto& ev = series.events;
    if (ev.revival_times.size() > ev.death_times.size() ||
        ev.death_times.size() > ev.revival_times.size() + 1) {
      interleave = false;
    }
    for (std::size_t i = 0; i < ev.revival_times.size(); ++i) {
      if (!(ev.death_times[i] < ev.revival_times[i])) interleave = false;
      if (i + 1 < ev.death_times.size() && !(ev.revival_times[i] < ev.death_times[i + 1])) interleave = false;
    }
  }
  add("death and revival times interleave", interleave, interleave ? "ok" : "out of order");
  return report;
}

}  // namespace cavent
