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

#include "qslide/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qslide/analytic.hpp"
#include "qslide/errors.hpp"
#include "qslide/jacobi.hpp"
#include "qslide/scatter.hpp"

#ifndef QSLIDE_DATA_DIR
#define QSLIDE_DATA_DIR "data"
#endif

namespace qslide {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g4(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

[[noreturn]] void field_error(std::string_view field, const std::string& what) {
  throw ConfigError("config." + std::string(field) + ": " + what);
}

template <class T>
T get_as(const json& j, std::string_view field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    field_error(field, "wrong type (" + std::string(j.type_name()) + ")");
  }
}

std::optional<double> get_time_or_auto(const json& j, std::string_view field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "auto") return std::nullopt;
    field_error(field, "expected a number or \"auto\"");
  }
  if (!j.is_number()) field_error(field, "expected a number or \"auto\"");
  return j.get<double>();
}

PropagatorKind parse_propagator(std::string_view s) {
  if (s == "automatic") return PropagatorKind::automatic;
  if (s == "spectral") return PropagatorKind::spectral;
  if (s == "chebyshev") return PropagatorKind::chebyshev;
  field_error("propagator", "unknown propagator '" + std::string(s) + "'");
}

std::string_view to_string(PropagatorKind k) {
  switch (k) {
    case PropagatorKind::spectral:
      return "spectral";
    case PropagatorKind::chebyshev:
      return "chebyshev";
    default:
      return "automatic";
  }
}

TuneObjective parse_objective(std::string_view s) {
  if (s == "transmission") return TuneObjective::transmission;
  if (s == "peak_momentum") return TuneObjective::peak_momentum;
  field_error("tune_objective", "unknown objective '" + std::string(s) + "'");
}

std::string_view to_string(TuneObjective o) {
  return o == TuneObjective::transmission ? "transmission" : "peak_momentum";
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.kind);
  j["out"] = c.out_dir.string();
  j["widget_dir"] = c.widget_dir.string();
  j["workers"] = c.workers;
  j["quiet"] = c.quiet;
  j["propagator"] = to_string(c.propagator);
  j["gate"] = to_string(c.gate);
  j["a"] = c.a;
  j["slide_len"] = c.slide_len;
  j["input_len"] = c.input_len;
  j["output_len"] = c.output_len;
  j["t_off_pi"] = c.t_off_pi ? json(*c.t_off_pi) : json("auto");
  j["t_final_pi"] = c.t_final_pi ? json(*c.t_final_pi) : json("auto");
  j["snapshot_times_pi"] = c.snapshot_times_pi;
  j["probe_time_pi"] = c.probe_time_pi;
  j["tune_objective"] = to_string(c.tune_objective);
  j["tune_lo_pi"] = c.tune_lo_pi;
  j["tune_hi_pi"] = c.tune_hi_pi;
  j["tune_grid"] = c.tune_grid;
  j["ladder"] = c.ladder;
  std::vector<std::string> gates;
  for (GateKind g : c.sweep_gates) gates.emplace_back(to_string(g));
  j["sweep_gates"] = gates;
  j["a_values"] = c.a_values;
  j["time_points"] = c.time_points;
  j["widgets"] = c.widgets;
  j["k_points"] = c.k_points;
  j["degrees"] = c.degrees;
  j["validate_a"] = c.validate_a;
  j["validate_times"] = c.validate_times;
  j["validate_tolerance"] = c.validate_tolerance;
  return j;
}

// Output helpers. Every data file starts with the resolved config.

class OutputSet {
 public:
  explicit OutputSet(const ExperimentConfig& config)
      : dir_(config.out_dir), config_line_(config_json(config)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("config.out: cannot create '" + dir_.string() + "': " + ec.message());
  }

  std::ofstream open(const std::string& name, bool csv = true) {
    const auto path = dir_ / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    if (csv) os << "# config: " << config_line_ << "\n";
    files_.push_back(path);
    return os;
  }

  void write_json(const std::string& name, json body) {
    body["config"] = json::parse(config_line_);
    auto os = open(name, false);
    os << body.dump(2) << "\n";
  }

  const std::vector<std::filesystem::path>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string config_line_;
  std::vector<std::filesystem::path> files_;
};

void write_manifest(const ExperimentConfig& config, const RunResult& result) {
  std::ofstream os(config.out_dir / "manifest.txt");
  if (!os) return;
  os << "experiment: " << to_string(config.kind) << "\n";
  os << "status: " << (result.exit_code == 0 ? "ok" : "failed") << "\n";
  os << "exit_code: " << result.exit_code << "\n";
  if (result.exit_code != 0) os << "error: " << result.message << "\n";
  os << "config: " << config_json(config) << "\n";
  for (const auto& f : result.files) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(f, ec);
    os << "file: " << f.filename().string() << " " << (ec ? 0 : size) << "\n";
  }
}

json report_to_json(const GateRunReport& r) {
  json j;
  j["transmission"] = r.transmission;
  j["per_rail_probability"] = r.per_rail_probability;
  j["remaining_probability"] = r.remaining_probability;
  j["relative_phase"] = r.relative_phase;
  j["reference_overlap_fidelity"] = r.reference_overlap_fidelity;
  j["peak_momentum_at_switch"] = r.peak_momentum_at_switch;
  j["probe_time"] = r.probe_time;
  j["final_time"] = r.final_time;
  return j;
}

Widget gate_widget(const ExperimentConfig& config, GateKind gate) {
  if (gate == GateKind::reference) return bare_link_widget();
  Widget w = load_widget(widget_path(config, to_string(gate)));
  validate_widget(w);
  return w;
}

std::pair<int, int> wire_lengths(const ExperimentConfig& c) {
  auto [in, out] = ladder_wire_lengths(c.slide_len);
  return {c.input_len > 0 ? c.input_len : in, c.output_len > 0 ? c.output_len : out};
}

void say(const ExperimentConfig& c, const std::string& line) {
  if (!c.quiet) std::cout << line << std::endl;
}

// ---- experiments ----

void momentum_map(const ExperimentConfig& c, OutputSet& out) {
  auto os = out.open("momentum_map.csv");
  os << "a,t,t_over_pi,theta,theta_over_pi\n";
  for (double a : c.a_values) {
    const double full = period(a);
    for (int j = 0; j < c.time_points; ++j) {
      const double t = full * (j + 0.5) / c.time_points;
      const double theta = momentum_theta(t, a);
      os << g17(a) << ',' << g17(t) << ',' << g17(t / kPi) << ',' << g17(theta) << ','
         << g17(theta / kPi) << '\n';
    }
    say(c, "a = " + g4(a) + ": period " + g4(full / kPi) + " pi, theta(t) at b pi/2 = " +
               g4(momentum_theta(0.5 * full / 2, a) / kPi) + " pi");
  }
}

void write_momentum_csv(std::ostream& os, const GateRun& run) {
  os << "time,role,rail,k,density\n";
  const int rails = run.graph.layout().rails;
  for (const auto& state : run.trajectory) {
    for (SiteRole role : {SiteRole::input_wire, SiteRole::output_wire}) {
      for (int r = 0; r < rails; ++r) {
        const auto sites = run.graph.sites(role, r);
        if (sites.empty()) continue;
        const auto spec = momentum_spectrum(state, role_window(run.graph, role, r));
        for (std::size_t i = 0; i < spec.k_grid.size(); ++i) {
          os << g17(state.time) << ',' << to_string(role) << ',' << r << ','
             << g17(spec.k_grid[i]) << ',' << g17(spec.density[i]) << '\n';
        }
      }
    }
  }
}

void gate_run(const ExperimentConfig& c, OutputSet& out) {
  GateRun run = run_gate(c);
  {
    auto os = out.open("graph.txt");
    write_graph(os, run.graph);
  }
  {
    auto os = out.open("trajectory.csv");
    write_trajectory_csv(os, run.trajectory);
  }
  {
    auto os = out.open("momentum.csv");
    write_momentum_csv(os, run);
  }
  json body;
  body["report"] = report_to_json(run.report);
  body["t_off"] = run.t_off;
  body["n_sites"] = run.graph.n_sites();
  body["reference_sites"] = run.reference.n_sites();
  std::vector<double> times;
  for (const auto& s : run.trajectory) times.push_back(s.time);
  body["snapshot_times"] = times;
  out.write_json("report.json", body);

  const auto& r = run.report;
  std::string rails;
  for (double p : r.per_rail_probability) rails += " " + g4(p);
  say(c, "gate " + std::string(to_string(c.gate)) + ": " + std::to_string(run.graph.n_sites()) +
             " sites, t_off " + g4(run.t_off / kPi) + " pi");
  say(c, "transmission " + g4(r.transmission) + " (rails" + rails + "), fidelity " +
             g4(r.reference_overlap_fidelity) + ", relative phase " + g4(r.relative_phase / kPi) +
             " pi, peak momentum " + g4(r.peak_momentum_at_switch / kPi) + " pi at t = " +
             g4(r.probe_time / kPi) + " pi");
}

void fidelity_sweep(const ExperimentConfig& c, OutputSet& out) {
  const auto points = run_fidelity_sweep(c);
  auto os = out.open("fidelity_sweep.csv");
  os << "gate,slide_len,input_len,output_len,n_sites,t_off,transmission,"
        "reference_overlap_fidelity,relative_phase,remaining_probability\n";
  for (const auto& p : points) {
    os << to_string(p.gate) << ',' << p.slide_len << ',' << p.input_len << ',' << p.output_len
       << ',' << p.n_sites << ',' << g17(p.t_off) << ',' << g17(p.report.transmission) << ','
       << g17(p.report.reference_overlap_fidelity) << ',' << g17(p.report.relative_phase) << ','
       << g17(p.report.remaining_probability) << '\n';
    say(c, std::string(to_string(p.gate)) + " slide " + std::to_string(p.slide_len) +
               ": transmission " + g4(p.report.transmission) + ", fidelity " +
               g4(p.report.reference_overlap_fidelity) + ", t_off " + g4(p.t_off / kPi) + " pi");
  }
}

void scatter_sweep(const ExperimentConfig& c, OutputSet& out) {
  const auto grid = midpoint_k_grid(c.k_points);
  for (const auto& name : c.widgets) {
    Widget w = load_widget(widget_path(c, name));
    validate_widget(w);
    for (int rail = 0; rail < w.rail_count(); ++rail) {
      const auto sols = sweep_k(w, grid, rail);
      auto os = out.open("scatter_" + name + "_rail" + std::to_string(rail) + ".csv");
      write_transmission_csv(os, w, sols);
    }
    const auto at = solve_plane_wave(w, -kPi / 4);
    say(c, "widget " + name + ": transmission at -pi/4 " + g4(at.total_transmission()));
  }
}

void validate_analytic(const ExperimentConfig& c, OutputSet& out) {
  const AnalyticCheck check = run_analytic_checks(c);
  json body;
  body["pst_error"] = check.pst_error;
  body["amplitude_error"] = check.amplitude_error;
  body["spectrum_error"] = check.spectrum_error;
  body["period_error"] = check.period_error;
  body["tolerance"] = c.validate_tolerance;
  const double worst = std::max({check.pst_error, check.amplitude_error, check.spectrum_error,
                                 check.period_error});
  body["passed"] = worst <= c.validate_tolerance;
  out.write_json("validate_analytic.json", body);
  say(c, "pst " + g4(check.pst_error) + ", amplitude " + g4(check.amplitude_error) +
             ", spectrum " + g4(check.spectrum_error) + ", period " + g4(check.period_error));
  if (!(worst <= c.validate_tolerance)) {
    throw NumericalError("validate_analytic: worst error " + g4(worst) + " exceeds tolerance " +
                             g4(c.validate_tolerance),
                         worst);
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::momentum_map:
      return "momentum_map";
    case ExperimentKind::gate_run:
      return "gate_run";
    case ExperimentKind::fidelity_sweep:
      return "fidelity_sweep";
    case ExperimentKind::scatter_sweep:
      return "scatter_sweep";
    case ExperimentKind::validate_analytic:
      return "validate_analytic";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::momentum_map, ExperimentKind::gate_run,
                 ExperimentKind::fidelity_sweep, ExperimentKind::scatter_sweep,
                 ExperimentKind::validate_analytic}) {
    if (text == to_string(k)) return k;
  }
  field_error("experiment", "unknown experiment '" + std::string(text) + "'");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "experiment") {
      c.kind = parse_experiment_kind(get_as<std::string>(v, key));
    } else if (key == "out") {
      c.out_dir = get_as<std::string>(v, key);
    } else if (key == "widget_dir") {
      c.widget_dir = get_as<std::string>(v, key);
    } else if (key == "workers") {
      c.workers = get_as<int>(v, key);
    } else if (key == "quiet") {
      c.quiet = get_as<bool>(v, key);
    } else if (key == "propagator") {
      c.propagator = parse_propagator(get_as<std::string>(v, key));
    } else if (key == "gate") {
      try {
        c.gate = parse_gate_kind(get_as<std::string>(v, key));
      } catch (const ConfigError& e) {
        field_error(key, e.what());
      }
    } else if (key == "a") {
      c.a = get_as<double>(v, key);
    } else if (key == "slide_len") {
      c.slide_len = get_as<int>(v, key);
    } else if (key == "input_len") {
      c.input_len = get_as<int>(v, key);
    } else if (key == "output_len") {
      c.output_len = get_as<int>(v, key);
    } else if (key == "t_off_pi") {
      c.t_off_pi = get_time_or_auto(v, key);
    } else if (key == "t_final_pi") {
      c.t_final_pi = get_time_or_auto(v, key);
    } else if (key == "snapshot_times_pi") {
      c.snapshot_times_pi = get_as<std::vector<double>>(v, key);
    } else if (key == "probe_time_pi") {
      c.probe_time_pi = get_as<double>(v, key);
    } else if (key == "tune_objective") {
      c.tune_objective = parse_objective(get_as<std::string>(v, key));
    } else if (key == "tune_lo_pi") {
      c.tune_lo_pi = get_as<double>(v, key);
    } else if (key == "tune_hi_pi") {
      c.tune_hi_pi = get_as<double>(v, key);
    } else if (key == "tune_grid") {
      c.tune_grid = get_as<int>(v, key);
    } else if (key == "ladder") {
      c.ladder = get_as<std::vector<int>>(v, key);
    } else if (key == "sweep_gates") {
      c.sweep_gates.clear();
      for (const auto& g : get_as<std::vector<std::string>>(v, key)) {
        try {
          c.sweep_gates.push_back(parse_gate_kind(g));
        } catch (const ConfigError& e) {
          field_error(key, e.what());
        }
      }
    } else if (key == "a_values") {
      c.a_values = get_as<std::vector<double>>(v, key);
    } else if (key == "time_points") {
      c.time_points = get_as<int>(v, key);
    } else if (key == "widgets") {
      c.widgets = get_as<std::vector<std::string>>(v, key);
    } else if (key == "k_points") {
      c.k_points = get_as<int>(v, key);
    } else if (key == "degrees") {
      c.degrees = get_as<std::vector<int>>(v, key);
    } else if (key == "validate_a") {
      c.validate_a = get_as<std::vector<double>>(v, key);
    } else if (key == "validate_times") {
      c.validate_times = get_as<int>(v, key);
    } else if (key == "validate_tolerance") {
      c.validate_tolerance = get_as<double>(v, key);
    } else {
      field_error(key, "unknown key");
    }
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string config_json(const ExperimentConfig& config) { return config_to_json(config).dump(); }

void validate_config(const ExperimentConfig& c) {
  if (c.workers < 1) field_error("workers", "must be >= 1");
  if (!std::isfinite(c.a)) field_error("a", "must be finite");
  if (c.slide_len < 10) field_error("slide_len", "must be >= 10");
  if (c.input_len < 0) field_error("input_len", "must be >= 0 (0 selects the ladder rule)");
  if (c.output_len < 0) field_error("output_len", "must be >= 0 (0 selects the ladder rule)");
  const double full_pi = period(c.a) / kPi;
  if (c.t_off_pi && !(*c.t_off_pi > 0.0 && *c.t_off_pi < full_pi)) {
    field_error("t_off_pi", "must lie in (0, " + g4(full_pi) + ")");
  }
  if (c.t_final_pi && c.t_off_pi && !(*c.t_final_pi >= *c.t_off_pi)) {
    field_error("t_final_pi", "must not precede t_off_pi");
  }
  for (double t : c.snapshot_times_pi) {
    if (!(t >= 0.0)) field_error("snapshot_times_pi", "times must be >= 0");
  }
  if (!(c.probe_time_pi > 0.0)) field_error("probe_time_pi", "must be > 0");
  if (!(c.tune_lo_pi > 0.0 && c.tune_hi_pi >= c.tune_lo_pi && c.tune_hi_pi < full_pi)) {
    field_error("tune_lo_pi", "tuning range must satisfy 0 < lo <= hi < " + g4(full_pi));
  }
  if (c.tune_grid < 8) field_error("tune_grid", "must be >= 8");
  if (c.ladder.empty()) field_error("ladder", "must not be empty");
  for (int s : c.ladder) {
    if (s < 10) field_error("ladder", "slide lengths must be >= 10");
  }
  if (c.sweep_gates.empty()) field_error("sweep_gates", "must not be empty");
  for (double a : c.a_values) {
    if (!std::isfinite(a)) field_error("a_values", "must be finite");
  }
  if (c.time_points < 2) field_error("time_points", "must be >= 2");
  if (c.k_points < 2) field_error("k_points", "must be >= 2");
  for (int n : c.degrees) {
    if (n < 1) field_error("degrees", "must be >= 1");
  }
  if (c.validate_times < 1) field_error("validate_times", "must be >= 1");
  if (!(c.validate_tolerance > 0.0)) field_error("validate_tolerance", "must be > 0");
  if (!c.widget_dir.empty() && !std::filesystem::is_directory(c.widget_dir)) {
    field_error("widget_dir", "'" + c.widget_dir.string() + "' is not a directory");
  }
}

std::filesystem::path widget_path(const ExperimentConfig& config, std::string_view name) {
  const std::filesystem::path dir = config.widget_dir.empty()
                                        ? std::filesystem::path(QSLIDE_DATA_DIR) / "widgets"
                                        : config.widget_dir;
  auto path = dir / (std::string(name) + ".widget");
  if (!std::filesystem::exists(path)) {
    field_error("widget_dir", "no widget file '" + path.string() + "'");
  }
  return path;
}

GateRun run_gate(const ExperimentConfig& c) {
  const Widget widget = gate_widget(c, c.gate);
  const auto [in_len, out_len] = wire_lengths(c);
  GateRun run{build_gate_circuit(c.gate, c.slide_len, in_len, out_len, c.a, widget),
              build_gate_circuit(GateKind::reference, c.slide_len, in_len, out_len, c.a, widget),
              0.0,
              {},
              {},
              {}};
  PropagatorOptions popts;
  popts.kind = c.propagator;
  const auto props = prepare_switch(run.graph, popts);
  const auto ref_props = prepare_switch(run.reference, popts);

  if (c.t_off_pi) {
    run.t_off = *c.t_off_pi * kPi;
  } else {
    TuneOptions topts;
    topts.propagator = popts;
    run.t_off = tune_switch_time(run.graph, props, c.tune_objective, c.tune_lo_pi * kPi,
                                 c.tune_hi_pi * kPi, c.tune_grid, topts);
  }

  double t_final = 0.0;
  if (c.t_final_pi) {
    t_final = *c.t_final_pi * kPi;
  } else {
    PacketState at_switch = PacketState::localized(run.graph.n_sites(), 0);
    at_switch.amplitudes = props.field_on->apply(at_switch.amplitudes, run.t_off);
    at_switch.time = run.t_off;
    t_final = default_final_time(run.graph, at_switch);
  }
  if (t_final < run.t_off) {
    throw ConfigError("config.t_final_pi: final time precedes the switch-off time");
  }

  const double probe = c.probe_time_pi * kPi;
  std::vector<double> samples;
  if (c.snapshot_times_pi.empty()) {
    samples = {run.t_off, probe};
  } else {
    for (double t : c.snapshot_times_pi) samples.push_back(t * kPi);
    samples.push_back(probe);
  }
  samples.push_back(t_final);
  std::erase_if(samples, [&](double t) { return t > t_final; });
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  run.trajectory = evolve(make_switch_schedule(props, run.t_off, t_final, samples),
                          PacketState::localized(run.graph.n_sites(), 0));
  run.reference_trajectory = evolve(make_switch_schedule(ref_props, run.t_off, t_final, samples),
                                    PacketState::localized(run.reference.n_sites(), 0));
  GateReportOptions ropts = default_report_options(c.gate);
  ropts.probe_time = probe;
  run.report = gate_report(run.trajectory, run.graph, run.reference_trajectory, run.reference,
                           gate_matrix(c.gate), ropts);
  return run;
}

std::vector<SweepPoint> run_fidelity_sweep(const ExperimentConfig& config) {
  struct Task {
    GateKind gate;
    int slide_len;
  };
  std::vector<Task> tasks;
  for (GateKind g : config.sweep_gates) {
    for (int s : config.ladder) tasks.push_back({g, s});
  }
  std::vector<SweepPoint> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        ExperimentConfig c = config;
        c.gate = tasks[i].gate;
        c.slide_len = tasks[i].slide_len;
        const auto [in_len, out_len] = ladder_wire_lengths(c.slide_len);
        c.input_len = in_len;
        c.output_len = out_len;
        c.t_off_pi.reset();
        c.t_final_pi.reset();
        c.snapshot_times_pi.clear();
        GateRun run = run_gate(c);
        results[i] = {c.gate, c.slide_len, in_len, out_len, run.graph.n_sites(), run.t_off,
                      run.report};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads =
      static_cast<int>(std::min<std::size_t>(config.workers, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

AnalyticCheck run_analytic_checks(const ExperimentConfig& c) {
  AnalyticCheck out;
  {
    const auto chain = build_chain(ChainKind::pst, 51);
    const auto psi = evolve_spectral(eigendecompose(chain),
                                     PacketState::localized(51, 0).amplitudes, kPi / 2);
    out.pst_error = 1.0 - std::norm(psi[50]);
  }
  for (int degree : c.degrees) {
    for (double a : c.validate_a) {
      const auto chain = build_chain(ChainKind::field, degree + 1, a);
      const Spectrum spectrum = eigendecompose(chain);
      const Eigen::VectorXcd start = PacketState::localized(degree + 1, 0).amplitudes;
      const double full = period(a);
      for (int j = 1; j <= c.validate_times; ++j) {
        const double t = full * j / (c.validate_times + 1);
        const Eigen::VectorXcd sim = evolve_spectral(spectrum, start, t);
        const auto exact = amplitude_profile(a, t, degree);
        std::complex<double> overlap = 0.0;
        for (int r = 0; r <= degree; ++r) overlap += std::conj(exact[r]) * sim[r];
        const auto unphase = std::polar(1.0, -std::arg(overlap));
        for (int r = 0; r <= degree; ++r) {
          out.amplitude_error = std::max(out.amplitude_error, std::abs(sim[r] * unphase - exact[r]));
        }
      }
      const Eigen::VectorXcd back = evolve_spectral(spectrum, start, full);
      out.period_error = std::max(out.period_error, std::abs(1.0 - std::abs(back[0])));
    }
  }
  for (int degree = 1; degree <= 50; ++degree) {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      const auto values = eigendecompose(build_krawtchouk_chain(degree, p)).eigenvalues;
      for (int n = 0; n <= degree; ++n) {
        out.spectrum_error = std::max(out.spectrum_error, std::abs(values[n] - n));
      }
    }
  }
  return out;
}

RunResult run_experiment(const ExperimentConfig& config) {
  RunResult result;
  std::optional<OutputSet> out;
  try {
    validate_config(config);
    out.emplace(config);
    switch (config.kind) {
      case ExperimentKind::momentum_map:
        momentum_map(config, *out);
        break;
      case ExperimentKind::gate_run:
        gate_run(config, *out);
        break;
      case ExperimentKind::fidelity_sweep:
        fidelity_sweep(config, *out);
        break;
      case ExperimentKind::scatter_sweep:
        scatter_sweep(config, *out);
        break;
      case ExperimentKind::validate_analytic:
        validate_analytic(config, *out);
        break;
    }
  } catch (const NumericalError& e) {
    result = {2, e.what(), {}};
  } catch (const std::logic_error& e) {
    result = {1, e.what(), {}};
  } catch (const std::exception& e) {
    result = {2, e.what(), {}};
  }
  if (out) {
    result.files = out->files();
    write_manifest(config, result);
  }
  return result;
}

}  // namespace qslide
