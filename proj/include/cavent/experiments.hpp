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

// Scenario layer: named presets, `key = value` configuration files,
// parameter sweeps and CSV output.
//
// A scenario's time grid is in gt for UnitMode::kDimensionless (rates in
// units of g) and in ps for UnitMode::kPhysical (rates in μeV). Integration
// always runs in gt.

#ifndef CAVENT_EXPERIMENTS_HPP_
#define CAVENT_EXPERIMENTS_HPP_

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cavent/composition.hpp"
#include "cavent/entanglement.hpp"

namespace cavent {

/// Configuration problem attributed to a single key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct Scenario {
  std::string name;
  SubsystemParams params_a;
  SubsystemParams params_b;
  InitialJointState initial;
  TimeGrid grid{20.0, 2001};
  UnitMode unit_mode = UnitMode::kDimensionless;
  TruncationSpec trunc;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Grid expressed in gt.
  TimeGrid dimensionless_grid() const;
};

struct ScenarioTable {
  UnitMode unit_mode = UnitMode::kDimensionless;
  TimeGrid native_grid;  // gt or ps, as configured
  std::vector<double> t_g;
  std::vector<double> t_ps;  // empty in dimensionless mode
  std::vector<double> c_q;
  std::vector<double> c_c;
  std::vector<double> q_t;
  std::vector<double> flux;  // per unit gt, or per ps in physical mode
  CoefficientTrajectory coeffs_a;
  CoefficientTrajectory coeffs_b;
  std::vector<std::string> warnings;

  std::size_t size() const { return t_g.size(); }
  ConcurrenceSeries qubit_series() const { return ConcurrenceSeries::from_values(native_grid, c_q); }
  ConcurrenceSeries cavity_series() const { return ConcurrenceSeries::from_values(native_grid, c_c); }
};

struct RunOptions {
  IntegratorOptions integrator;
};

ScenarioTable run_scenario(const Scenario& s, const RunOptions& opts = {});

inline constexpr std::string_view kCsvHeader = "t_g,t_ps,C_q,C_c,Q_t,flux";

/// CSV with header kCsvHeader, 12 significant digits, '\n' line ends.
std::string to_csv(const ScenarioTable& table);

const std::vector<std::string>& preset_names();
/// Throws ConfigError("preset", ...) for unknown names.
Scenario preset(std::string_view name);

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// ignored; unknown or repeated keys are errors.
Scenario parse_config(std::istream& in, std::string name = "config");
Scenario parse_config_text(const std::string& text, std::string name = "config");

enum class SweptParameter { kGammaD, kGammaC, kGammaQ, kAlpha };

SweptParameter parse_swept_parameter(std::string_view name);
std::string_view swept_parameter_name(SweptParameter p);

/// Copy of `base` with the swept quantity set on both subsystems.
Scenario with_swept_value(const Scenario& base, SweptParameter p, double value);

struct SweepSpec {
  SweptParameter parameter = SweptParameter::kGammaD;
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  Scenario base;

  void validate() const;
  std::vector<double> values() const;
};

struct SweepResult {
  SweptParameter parameter = SweptParameter::kGammaD;
  std::vector<double> values;
  std::vector<ScenarioTable> rows;  // one table per swept value, in value order
};

SweepResult run_sweep(const SweepSpec& spec, const RunOptions& opts = {});
SweepResult run_sweep_values(const Scenario& base, SweptParameter p, std::vector<double> values,
                             const RunOptions& opts = {});

/// Long-format CSV: "<param>,t_g,t_ps,C_q,C_c,Q_t,flux", rows grouped by value.
std::string to_csv(const SweepResult& sweep);

/// Trapezoid integral of a series over its gt axis.
double time_integral(const std::vector<double>& t, const std::vector<double>& values);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
};

/// Invariant suite for one scenario: density-matrix checks on every emitted
/// state, coefficient ranges and identities, X-state versus Wootters
/// concurrence, and step-halving convergence.
ValidationReport validate_scenario(const Scenario& s, const ScenarioTable& table);

}  // namespace cavent

#endif  // CAVENT_EXPERIMENTS_HPP_
