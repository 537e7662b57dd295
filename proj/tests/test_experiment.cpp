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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "qslide/errors.hpp"

namespace qslide {
namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qslide_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Config, Defaults) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.kind, ExperimentKind::gate_run);
  EXPECT_EQ(c.gate, GateKind::ub);
  EXPECT_EQ(c.slide_len, 200);
  ASSERT_TRUE(c.t_off_pi);
  EXPECT_EQ(*c.t_off_pi, 0.226);
  EXPECT_EQ(c.ladder.front(), 200);
  EXPECT_EQ(c.ladder.back(), 2000);
}

TEST(Config, ParsesKeys) {
  const auto c = parse_config(R"({"experiment": "fidelity_sweep", "gate": "uc", "a": -3,
      "t_off_pi": "auto", "ladder": [200, 400], "sweep_gates": ["ub"], "workers": 3,
      "propagator": "chebyshev", "tune_objective": "peak_momentum"})");
  EXPECT_EQ(c.kind, ExperimentKind::fidelity_sweep);
  EXPECT_EQ(c.gate, GateKind::uc);
  EXPECT_EQ(c.a, -3.0);
  EXPECT_FALSE(c.t_off_pi);
  EXPECT_EQ(c.ladder, std::vector<int>({200, 400}));
  EXPECT_EQ(c.sweep_gates, std::vector<GateKind>({GateKind::ub}));
  EXPECT_EQ(c.workers, 3);
  EXPECT_EQ(c.propagator, PropagatorKind::chebyshev);
  EXPECT_EQ(c.tune_objective, TuneObjective::peak_momentum);
}

TEST(Config, FieldLevelErrors) {
  const auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"slide_lenn": 3})").find("config.slide_lenn"), std::string::npos);
  EXPECT_NE(message(R"({"slide_len": "big"})").find("config.slide_len"), std::string::npos);
  EXPECT_NE(message(R"({"slide_len": 4})").find("config.slide_len"), std::string::npos);
  EXPECT_NE(message(R"({"t_off_pi": 5})").find("config.t_off_pi"), std::string::npos);
  EXPECT_NE(message(R"({"t_off_pi": "soon"})").find("config.t_off_pi"), std::string::npos);
  EXPECT_NE(message(R"({"gate": "cnot"})").find("config.gate"), std::string::npos);
  EXPECT_NE(message(R"({"experiment": "plot"})").find("config.experiment"), std::string::npos);
  EXPECT_NE(message(R"({"tune_grid": 3})").find("config.tune_grid"), std::string::npos);
  EXPECT_NE(message(R"({"workers": 0})").find("config.workers"), std::string::npos);
  EXPECT_NE(message(R"({"widget_dir": "/no/such/dir"})").find("config.widget_dir"),
            std::string::npos);
  EXPECT_NE(message("[1, 2]").find("config"), std::string::npos);
  EXPECT_NE(message("{").find("malformed"), std::string::npos);
  EXPECT_THROW(load_config("/no/such/file.json"), ConfigError);
}

TEST(Config, JsonRoundTrip) {
  auto c = parse_config(R"({"experiment": "scatter_sweep", "a": -1.25, "t_off_pi": "auto"})");
  const std::string once = config_json(c);
  EXPECT_EQ(config_json(parse_config(once)), once);
  c.t_off_pi = 0.1 + 0.2;  // not representable in few digits
  EXPECT_EQ(*parse_config(config_json(c)).t_off_pi, 0.1 + 0.2);
}

TEST(Run, MomentumMapFilesAndManifest) {
  ExperimentConfig c;
  c.kind = ExperimentKind::momentum_map;
  c.out_dir = scratch("mm");
  c.quiet = true;
  c.time_points = 50;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  ASSERT_EQ(r.files.size(), 1u);
  const std::string csv = slurp(r.files[0]);
  EXPECT_EQ(csv.rfind("# config: " + config_json(c) + "\n", 0), 0u);
  int rows = 0;
  for (char ch : csv) rows += ch == '\n';
  EXPECT_EQ(rows, 2 + 50 * 5);
  const std::string manifest = slurp(c.out_dir / "manifest.txt");
  EXPECT_NE(manifest.find("status: ok"), std::string::npos);
  EXPECT_NE(manifest.find("file: momentum_map.csv"), std::string::npos);

  // identical config, byte-identical output
  const std::string manifest_before = manifest;
  ASSERT_EQ(run_experiment(c).exit_code, 0);
  EXPECT_EQ(slurp(r.files[0]), csv);
  EXPECT_EQ(slurp(c.out_dir / "manifest.txt"), manifest_before);
}

TEST(Run, GateRunWritesReport) {
  ExperimentConfig c;
  c.kind = ExperimentKind::gate_run;
  c.out_dir = scratch("gate");
  c.quiet = true;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto report = nlohmann::json::parse(slurp(c.out_dir / "report.json"));
  EXPECT_NEAR(report["report"]["transmission"].get<double>(), 0.9971, 0.003);
  EXPECT_EQ(report["config"]["gate"], "ub");
  const auto times = report["snapshot_times"].get<std::vector<double>>();
  ASSERT_EQ(times.size(), 3u);
  EXPECT_NEAR(times[0], 0.226 * kPi, 1e-15);
  EXPECT_NEAR(times[1], 0.404 * kPi, 1e-15);
  for (const char* f : {"trajectory.csv", "momentum.csv", "graph.txt"}) {
    EXPECT_TRUE(fs::exists(c.out_dir / f)) << f;
    EXPECT_EQ(slurp(c.out_dir / f).rfind("# config: ", 0), 0u) << f;
  }
}

TEST(Run, NumericalFailureFlushesManifest) {
  ExperimentConfig c;
  c.kind = ExperimentKind::validate_analytic;
  c.out_dir = scratch("fail");
  c.quiet = true;
  c.degrees = {10};
  c.validate_tolerance = 1e-300;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(fs::exists(c.out_dir / "validate_analytic.json"));
  const std::string manifest = slurp(c.out_dir / "manifest.txt");
  EXPECT_NE(manifest.find("status: failed"), std::string::npos);
  EXPECT_NE(manifest.find("exit_code: 2"), std::string::npos);
  EXPECT_NE(manifest.find("file: validate_analytic.json"), std::string::npos);
}

TEST(Run, ConfigFailureExitCode) {
  ExperimentConfig c;
  c.kind = ExperimentKind::scatter_sweep;
  c.out_dir = scratch("cfg");
  c.quiet = true;
  c.widgets = {"no_such_widget"};
  const auto r = run_experiment(c);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.message.find("widget"), std::string::npos);
  EXPECT_NE(slurp(c.out_dir / "manifest.txt").find("status: failed"), std::string::npos);
}

TEST(Run, ScatterSweepTables) {
  ExperimentConfig c;
  c.kind = ExperimentKind::scatter_sweep;
  c.out_dir = scratch("scatter");
  c.quiet = true;
  c.k_points = 16;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  for (const char* f : {"scatter_ub_rail0.csv", "scatter_uc_rail0.csv", "scatter_uc_rail1.csv",
                        "scatter_bare_rail0.csv"}) {
    EXPECT_TRUE(fs::exists(c.out_dir / f)) << f;
  }
}

TEST(AnalyticChecks, AllTiny) {
  ExperimentConfig c;
  const auto check = run_analytic_checks(c);
  EXPECT_LE(check.pst_error, 1e-8);
  EXPECT_LE(check.amplitude_error, 1e-8);
  EXPECT_LE(check.spectrum_error, 1e-8);
  EXPECT_LE(check.period_error, 1e-6);
}

TEST(Sweep, OrderIndependentOfWorkers) {
  ExperimentConfig c;
  c.ladder = {200, 400};
  c.sweep_gates = {GateKind::ub};
  c.tune_grid = 8;
  c.workers = 1;
  const auto serial = run_fidelity_sweep(c);
  c.workers = 2;
  const auto parallel = run_fidelity_sweep(c);
  ASSERT_EQ(serial.size(), 2u);
  ASSERT_EQ(parallel.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(serial[i].slide_len, c.ladder[i]);
    EXPECT_EQ(parallel[i].slide_len, c.ladder[i]);
    EXPECT_NEAR(serial[i].report.transmission, parallel[i].report.transmission, 1e-12);
    EXPECT_NEAR(serial[i].t_off, parallel[i].t_off, 1e-12);
  }
  EXPECT_EQ(serial[1].input_len, 176);
  EXPECT_EQ(serial[1].output_len, 177);
  EXPECT_GE(serial[1].report.transmission, serial[0].report.transmission - 1e-3);
}

TEST(Names, ExperimentKindRoundTrip) {
  for (auto k : {ExperimentKind::momentum_map, ExperimentKind::gate_run,
                 ExperimentKind::fidelity_sweep, ExperimentKind::scatter_sweep,
                 ExperimentKind::validate_analytic}) {
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  }
}

}  // namespace
}  // namespace qslide
