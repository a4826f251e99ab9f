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

// cavent simulate --preset fig2a --out fig2a.csv
// cavent simulate --config my.cfg --out my.csv [--validate]
// cavent sweep --preset fig3 --param gamma_d --from 0 --to 1 --steps 101 --out fig3.csv
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cavent/experiments.hpp"
#include "exit_codes.hpp"

namespace {

using cavent::cli::kExitConfig;
using cavent::cli::kExitNumerical;

struct Source {
  std::string preset;
  std::string config;
};

cavent::Scenario load(const Source& src) {
  if (!src.preset.empty()) return cavent::preset(src.preset);
  std::ifstream in(src.config);
  if (!in) throw cavent::ConfigError("config", "cannot open '" + src.config + "'");
  return cavent::parse_config(in, src.config);
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cavent::ConfigError("out", "cannot write '" + path + "'");
  out << text;
}

bool report_validation(const cavent::Scenario& s, const cavent::ScenarioTable& t) {
  const cavent::ValidationReport r = cavent::validate_scenario(s, t);
  for (const auto& c : r.checks) {
    std::fprintf(stderr, "[%s] %s: %s (%s)\n", c.passed ? "PASS" : "FAIL", s.name.c_str(),
                 c.name.c_str(), c.detail.c_str());
  }
  return r.passed();
}

void print_warnings(const cavent::ScenarioTable& t) {
  for (const auto& w : t.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of two independent qubit-cavity subsystems"};
  app.require_subcommand(1);

  Source sim_src;
  std::string sim_out = "-";
  bool sim_validate = false;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and write its CSV table");
  auto* sim_preset = sim->add_option("--preset", sim_src.preset, "Preset name (fig2a, fig2b, fig3, fig4a, fig4b)");
  auto* sim_config = sim->add_option("--config", sim_src.config, "Scenario file with 'key = value' lines");
  sim_preset->excludes(sim_config);
  sim->add_option("--out", sim_out, "Output CSV path ('-' for stdout)");
  sim->add_flag("--validate", sim_validate, "Run the invariant suite; exit 3 on failure");

  Source sw_src;
  std::string sw_out = "-";
  std::string sw_param = "gamma_d";
  double sw_from = 0.0;
  double sw_to = 1.0;
  int sw_steps = 101;
  bool sw_validate = false;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write a long-format CSV");
  auto* sw_preset = sweep->add_option("--preset", sw_src.preset, "Base preset");
  auto* sw_config = sweep->add_option("--config", sw_src.config, "Base scenario file");
  sw_preset->excludes(sw_config);
  sweep->add_option("--param", sw_param, "gamma_d, gamma_c, gamma_q or alpha");
  sweep->add_option("--from", sw_from, "First value");
  sweep->add_option("--to", sw_to, "Last value");
  sweep->add_option("--steps", sw_steps, "Number of values (>= 2)");
  sweep->add_option("--out", sw_out, "Output CSV path ('-' for stdout)");
  sweep->add_flag("--validate", sw_validate, "Run the invariant suite on every row; exit 3 on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sim->parsed()) {
      if (sim_src.preset.empty() && sim_src.config.empty()) {
        throw cavent::ConfigError("preset", "one of --preset or --config is required");
      }
      const cavent::Scenario s = load(sim_src);
      const cavent::ScenarioTable table = cavent::run_scenario(s);
      print_warnings(table);
      if (sim_validate && !report_validation(s, table)) return kExitNumerical;
      write_output(sim_out, cavent::to_csv(table));
      return 0;
    }

    if (sw_src.preset.empty() && sw_src.config.empty()) {
      throw cavent::ConfigError("preset", "one of --preset or --config is required");
    }
    cavent::SweepSpec spec;
    spec.base = load(sw_src);
    spec.parameter = cavent::parse_swept_parameter(sw_param);
    spec.from = sw_from;
    spec.to = sw_to;
    spec.steps = sw_steps;
    const cavent::SweepResult result = cavent::run_sweep(spec);
    if (!result.rows.empty()) print_warnings(result.rows.front());
    if (sw_validate) {
      bool ok = true;
      for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const cavent::Scenario s = cavent::with_swept_value(spec.base, spec.parameter, result.values[i]);
        ok = report_validation(s, result.rows[i]) && ok;
      }
      if (!ok) return kExitNumerical;
    }
    write_output(sw_out, cavent::to_csv(result));
    return 0;
  } catch (...) {
    const cavent::cli::Failure f = cavent::cli::classify(std::current_exception());
    std::fprintf(stderr, "%s\n", f.message.c_str());
    return f.code;
  }
}
