// Copyright 2026 The qslide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qslide: command-line runner for the slide and gate experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qslide/errors.hpp"
#include "qslide/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum-slide wave packet and widget gate experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  bool quiet = false;
  std::optional<std::string> gate;
  std::optional<double> a;
  std::optional<int> slide_len;
  std::optional<std::string> t_off;

  const std::pair<const char*, qslide::ExperimentKind> commands[] = {
      {"momentum-map", qslide::ExperimentKind::momentum_map},
      {"gate-run", qslide::ExperimentKind::gate_run},
      {"fidelity-sweep", qslide::ExperimentKind::fidelity_sweep},
      {"scatter-sweep", qslide::ExperimentKind::scatter_sweep},
      {"validate-analytic", qslide::ExperimentKind::validate_analytic},
  };
  const char* help[] = {
      "momentum theta(t, a) curves over a set of field slopes",
      "prepare a packet on the slide and send it through a gate widget",
      "transmission and fidelity over the slide-length ladder",
      "plane-wave transmission tables for widget files",
      "analytic amplitudes and spectra against the propagator",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "no summary on stdout");
    if (commands[i].second == qslide::ExperimentKind::gate_run ||
        commands[i].second == qslide::ExperimentKind::fidelity_sweep) {
      sub->add_option("--gate", gate, "ub, uc or reference");
      sub->add_option("-a,--field-slope", a, "slide field slope a");
      sub->add_option("--slide-len", slide_len, "slide sites");
      sub->add_option("--t-off", t_off, "switch-off time in units of pi, or 'auto'");
    }
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  qslide::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = qslide::load_config(config_path);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) config.kind = commands[i].second;
    }
    if (out_dir) config.out_dir = *out_dir;
    if (workers) config.workers = *workers;
    if (quiet) config.quiet = true;
    if (gate) config.gate = qslide::parse_gate_kind(*gate);
    if (a) config.a = *a;
    if (slide_len) config.slide_len = *slide_len;
    if (t_off) {
      if (*t_off == "auto") {
        config.t_off_pi.reset();
      } else {
        try {
          config.t_off_pi = std::stod(*t_off);
        } catch (const std::exception&) {
          throw qslide::ConfigError("--t-off: expected a number or 'auto'");
        }
      }
    }
    qslide::validate_config(config);
  } catch (const qslide::ConfigError& e) {
    std::cerr << "qslide: " << e.what() << "\n";
    return 1;
  }

  const auto result = qslide::run_experiment(config);
  if (result.exit_code != 0) {
    std::cerr << "qslide: " << result.message << "\n";
  } else if (!config.quiet) {
    std::cout << "wrote " << result.files.size() << " files to " << config.out_dir.string()
              << "\n";
  }
  return result.exit_code;
}
