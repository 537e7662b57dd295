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

#ifndef QSLIDE_EXPERIMENT_HPP_
#define QSLIDE_EXPERIMENT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qslide/analysis.hpp"
#include "qslide/assembly.hpp"
#include "qslide/propagate.hpp"

namespace qslide {

enum class ExperimentKind { momentum_map, gate_run, fidelity_sweep, scatter_sweep, validate_analytic };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

/// Fully resolved run description. Times are stored in units of pi, the way
/// they are written in config files (keys ending in _pi).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::gate_run;
  std::filesystem::path out_dir = "qslide_out";
  std::filesystem::path widget_dir;  // empty: built-in data directory
  int workers = 1;
  bool quiet = false;
  PropagatorKind propagator = PropagatorKind::automatic;

  // gate_run / fidelity_sweep
  GateKind gate = GateKind::ub;
  double a = -2.0;
  int slide_len = 200;
  int input_len = 0;   // 0: ladder rule
  int output_len = 0;  // 0: ladder rule
  std::optional<double> t_off_pi = 0.226;  // nullopt: tune
  std::optional<double> t_final_pi;        // nullopt: centroid mid output wire
  std::vector<double> snapshot_times_pi;   // empty: {t_off, 0.404, final}
  double probe_time_pi = 0.404;
  TuneObjective tune_objective = TuneObjective::transmission;
  double tune_lo_pi = 0.18;
  double tune_hi_pi = 0.28;
  int tune_grid = 11;

  std::vector<int> ladder = {200, 400, 600, 800, 1000, 1200, 1400, 1600, 1800, 2000};
  std::vector<GateKind> sweep_gates = {GateKind::ub, GateKind::uc};

  // momentum_map
  std::vector<double> a_values = {-4.0, -2.0, 0.0, 2.0, 4.0};
  int time_points = 400;

  // scatter_sweep
  std::vector<std::string> widgets = {"ub", "uc", "bare"};
  int k_points = 200;

  // validate_analytic
  std::vector<int> degrees = {10, 30, 60};
  std::vector<double> validate_a = {-2.0, 0.0, 1.0};
  int validate_times = 10;
  double validate_tolerance = 1e-8;
};

/// Parses a JSON config. Unknown keys and out-of-range values raise
/// ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of the resolved config (sorted keys, 17 digits).
std::string config_json(const ExperimentConfig& config);

void validate_config(const ExperimentConfig& config);

std::filesystem::path widget_path(const ExperimentConfig& config, std::string_view name);

struct RunResult {
  int exit_code = 0;
  std::string message;
  std::vector<std::filesystem::path> files;
};

/// Runs one experiment, writing results under config.out_dir together with
/// manifest.txt. Errors are caught: partial files stay on disk and the
/// manifest records the failure. Exit codes are 0, 1 (config) and 2
/// (numerical).
RunResult run_experiment(const ExperimentConfig& config);

// Building blocks the runner uses, exposed for the bindings and tests.

struct GateRun {
  WalkGraph graph;
  WalkGraph reference;
  double t_off = 0.0;
  std::vector<PacketState> trajectory;
  std::vector<PacketState> reference_trajectory;
  GateRunReport report;
};

/// Builds the circuit and its reference, tunes t_off when unset, evolves
/// both and scores the gate.
GateRun run_gate(const ExperimentConfig& config);

/// One row of the length ladder for one gate.
struct SweepPoint {
  GateKind gate = GateKind::ub;
  int slide_len = 0;
  int input_len = 0;
  int output_len = 0;
  int n_sites = 0;
  double t_off = 0.0;
  GateRunReport report;
};

/// Runs config.ladder for every gate in config.sweep_gates on a pool of
/// config.workers threads. Output order is gate-major, then ladder order.
std::vector<SweepPoint> run_fidelity_sweep(const ExperimentConfig& config);

struct AnalyticCheck {
  double pst_error = 0.0;         // 1 - |<N|psi(pi/2)>|^2
  double amplitude_error = 0.0;   // max site deviation, global phase removed
  double spectrum_error = 0.0;    // Krawtchouk chain eigenvalues vs 0..N
  double period_error = 0.0;      // 1 - |<0|psi(2 b pi)>|
};

AnalyticCheck run_analytic_checks(const ExperimentConfig& config);

}  // namespace qslide

#endif  // QSLIDE_EXPERIMENT_HPP_
