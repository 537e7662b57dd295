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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qslide/analysis.hpp"
#include "qslide/analytic.hpp"
#include "qslide/assembly.hpp"
#include "qslide/errors.hpp"
#include "qslide/experiment.hpp"
#include "qslide/jacobi.hpp"
#include "qslide/propagate.hpp"
#include "qslide/scatter.hpp"

namespace py = pybind11;
using namespace qslide;

namespace {

py::dict report_dict(const GateRunReport& r) {
  py::dict d;
  d["transmission"] = r.transmission;
  d["per_rail_probability"] = r.per_rail_probability;
  d["remaining_probability"] = r.remaining_probability;
  d["relative_phase"] = r.relative_phase;
  d["reference_overlap_fidelity"] = r.reference_overlap_fidelity;
  d["peak_momentum_at_switch"] = r.peak_momentum_at_switch;
  d["probe_time"] = r.probe_time;
  d["final_time"] = r.final_time;
  return d;
}

ChainKind parse_chain_kind(const std::string& s) {
  if (s == "pst") return ChainKind::pst;
  if (s == "field") return ChainKind::field;
  if (s == "half_slide") return ChainKind::half_slide;
  if (s == "uniform") return ChainKind::uniform;
  throw ConfigError("unknown chain kind '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_qslide, m) {
  m.doc() = "Quantum-slide wave packets and widget gates";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def(
      "chain_matrix",
      [](const std::string& kind, int n_sites, double a, double j_uniform) {
        return build_chain(parse_chain_kind(kind), n_sites, a, j_uniform).dense();
      },
      py::arg("kind"), py::arg("n_sites"), py::arg("a") = 0.0, py::arg("j_uniform") = 1.0,
      "Dense Hamiltonian of a pst, field, half_slide or uniform chain.");
  m.def(
      "chain_eigenvalues",
      [](const std::string& kind, int n_sites, double a, double j_uniform) {
        return Eigen::VectorXd(
            eigendecompose(build_chain(parse_chain_kind(kind), n_sites, a, j_uniform)).eigenvalues);
      },
      py::arg("kind"), py::arg("n_sites"), py::arg("a") = 0.0, py::arg("j_uniform") = 1.0);
  m.def(
      "krawtchouk_eigenvalues",
      [](int degree, double p) {
        return Eigen::VectorXd(eigendecompose(build_krawtchouk_chain(degree, p)).eigenvalues);
      },
      py::arg("degree"), py::arg("p"));
  m.def(
      "evolve_chain",
      [](const std::string& kind, int n_sites, double a, double t) {
        const auto s = eigendecompose(build_chain(parse_chain_kind(kind), n_sites, a));
        return Eigen::VectorXcd(evolve_spectral(s, PacketState::localized(n_sites, 0).amplitudes, t));
      },
      py::arg("kind"), py::arg("n_sites"), py::arg("a"), py::arg("t"),
      "exp(-iHt)|0> on a chain.");

  m.def("amplitude_profile", &amplitude_profile, py::arg("a"), py::arg("t"), py::arg("degree"));
  m.def("momentum_theta", &momentum_theta, py::arg("t"), py::arg("a"));
  m.def("time_for_momentum", &time_for_momentum, py::arg("theta"), py::arg("a"));
  m.def("period", &period, py::arg("a"));
  m.def("p_of_a", &p_of_a, py::arg("a"));
  m.def(
      "gaussian_packet",
      [](int degree, double a, double t) {
        const auto g = gaussian_packet(degree, a, t);
        py::dict d;
        d["center"] = g.center;
        d["sigma"] = g.sigma;
        d["momentum"] = g.momentum;
        d["sigma_k"] = g.sigma_k;
        d["approximate_regime"] = g.approximate_regime;
        return d;
      },
      py::arg("degree"), py::arg("a"), py::arg("t"));
  m.def("transmission_b", &transmission_b, py::arg("k"), py::arg("limits") = false);
  m.def("gaussian_transmission",
        py::overload_cast<double, double>(&gaussian_transmission), py::arg("theta"),
        py::arg("sigma_k"));

  m.def(
      "plane_wave",
      [](const std::filesystem::path& widget_file, double k, int incident_rail) {
        const Widget w = load_widget(widget_file);
        const auto s = solve_plane_wave(w, k, incident_rail);
        py::dict d;
        d["k"] = s.k;
        d["reflection"] = s.reflection;
        d["transmission"] = s.transmission;
        d["phase_offsets"] = [&] {
          std::vector<double> v;
          for (int r = 0; r < w.rail_count(); ++r) v.push_back(transmission_phase_offset(s, w, r));
          return v;
        }();
        return d;
      },
      py::arg("widget_file"), py::arg("k"), py::arg("incident_rail") = 0,
      "Scattering amplitudes of a widget file at momentum k.");

  m.def(
      "run_gate",
      [](const std::string& gate, int slide_len, double a, std::optional<double> t_off_pi,
         const std::filesystem::path& widget_dir) {
        ExperimentConfig c;
        c.gate = parse_gate_kind(gate);
        c.slide_len = slide_len;
        c.a = a;
        c.t_off_pi = t_off_pi;
        c.widget_dir = widget_dir;
        validate_config(c);
        std::optional<GateRun> run;
        {
          py::gil_scoped_release release;
          run.emplace(run_gate(c));
        }
        py::dict d = report_dict(run->report);
        d["t_off"] = run->t_off;
        d["n_sites"] = run->graph.n_sites();
        return d;
      },
      py::arg("gate") = "ub", py::arg("slide_len") = 200, py::arg("a") = -2.0,
      py::arg("t_off_pi") = 0.226, py::arg("widget_dir") = std::filesystem::path(),
      "Slide, switch-off and scattering run; t_off_pi=None tunes the switch time.");

  m.def(
      "run_experiment",
      [](const std::string& config_json_text) {
        const ExperimentConfig c = parse_config(config_json_text);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        return py::make_tuple(r.exit_code, r.message, r.files);
      },
      py::arg("config_json"),
      "Run a JSON-configured experiment; returns (exit_code, message, files).");
  m.def(
      "resolve_config",
      [](const std::string& text) { return config_json(parse_config(text)); },
      py::arg("config_json"), "Canonical JSON of a config with defaults filled in.");
}
