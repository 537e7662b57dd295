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

#include "qslide/scatter.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qslide/errors.hpp"

namespace qslide {

namespace {

struct Lead {
  int site;
  bool input;
  int rail;
};

}  // namespace

double ScatterSolution::flux() const {
  double f = 0.0;
  for (const auto& r : reflection) f += std::norm(r);
  for (const auto& t : transmission) f += std::norm(t);
  return f;
}

double ScatterSolution::total_transmission() const {
  double f = 0.0;
  for (const auto& t : transmission) f += std::norm(t);
  return f;
}

ScatterSolution solve_plane_wave(const Widget& widget, double k, int incident_rail) {
  constexpr double kPi = std::numbers::pi;
  if (!(k > -kPi && k < 0.0)) {
    throw std::domain_error("solve_plane_wave: k must lie in (-pi, 0)");
  }
  const int rails = widget.rail_count();
  if (incident_rail < 0 || incident_rail >= rails) {
    throw ConfigError("solve_plane_wave: widget " + widget.name + " has no rail " +
                      std::to_string(incident_rail));
  }
  const auto ins = widget.port_sites(PortDirection::in);
  const auto outs = widget.port_sites(PortDirection::out);
  std::vector<Lead> leads;
  for (int r = 0; r < rails; ++r) leads.push_back({ins[r], true, r});
  for (int r = 0; r < rails; ++r) leads.push_back({outs[r], false, r});

  using cd = std::complex<double>;
  const int n = widget.n_sites;
  const double energy = 2.0 * std::cos(k);
  const cd out_phase = std::polar(1.0, k);
  // Each lead contributes psi_lead(1) = e^{ik} psi_port + delta (e^{-ik} - e^{ik})
  // to its port equation, where delta marks the incident lead.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) * energy;
  for (const auto& e : widget.edges) {
    m(e.a, e.b) -= e.coupling;
    m(e.b, e.a) -= e.coupling;
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  for (const auto& lead : leads) m(lead.site, lead.site) -= out_phase;
  rhs[ins[incident_rail]] = cd(0.0, -2.0 * std::sin(k));

  // Bound states decoupled from every port leave m singular but the system
  // consistent; a minimum-norm solve still fixes all port amplitudes.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> solver(m);
  solver.setThreshold(1e-12);
  const Eigen::VectorXcd psi = solver.solve(rhs);
  const double residual = (m * psi - rhs).norm();
  if (!(residual <= 1e-9)) {
    throw ResonanceError("solve_plane_wave: widget " + widget.name +
                             " has a lead-coupled bound state at E = " + std::to_string(energy),
                         energy);
  }

  ScatterSolution sol;
  sol.k = k;
  sol.incident_rail = incident_rail;
  sol.internal.assign(psi.data(), psi.data() + n);
  for (const auto& lead : leads) {
    const cd amp = psi[lead.site] - ((lead.input && lead.rail == incident_rail) ? 1.0 : 0.0);
    (lead.input ? sol.reflection : sol.transmission).push_back(amp);
  }
  return sol;
}

std::vector<ScatterSolution> sweep_k(const Widget& widget, std::span<const double> k_grid,
                                     int incident_rail) {
  std::vector<ScatterSolution> out;
  out.reserve(k_grid.size());
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    try {
      out.push_back(solve_plane_wave(widget, k_grid[i], incident_rail));
    } catch (const ResonanceError& e) {
      throw ResonanceError("k grid index " + std::to_string(i) + ": " + e.what(), e.energy());
    } catch (const std::domain_error& e) {
      throw std::domain_error("k grid index " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::complex<double> bare_transmission(int hops, double k) { return std::polar(1.0, k * hops); }

double transmission_phase_offset(const ScatterSolution& solution, const Widget& widget,
                                 int rail) {
  return wrap_phase(std::arg(solution.transmission.at(rail)) - solution.k * widget.reference_hops);
}

TransmissionTable transmission_table(std::span<const ScatterSolution> solutions) {
  std::vector<double> k;
  std::vector<double> t;
  for (const auto& s : solutions) {
    k.push_back(s.k);
    t.push_back(s.total_transmission());
  }
  return TransmissionTable(std::move(k), std::move(t));
}

std::vector<double> midpoint_k_grid(int n) {
  if (n < 1) throw ConfigError("midpoint_k_grid: need at least one point");
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) k[j] = -std::numbers::pi * (n - j - 0.5) / n;
  return k;
}

void write_transmission_csv(std::ostream& os, const Widget& widget,
                            std::span<const ScatterSolution> solutions) {
  const int rails = widget.rail_count();
  os << "k";
  for (int r = 0; r < rails; ++r) os << ",R" << r << "_prob";
  for (int r = 0; r < rails; ++r) os << ",T" << r << "_prob";
  for (int r = 0; r < rails; ++r) os << ",T" << r << "_phase_offset";
  os << "\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    os << buf;
  };
  for (const auto& s : solutions) {
    std::snprintf(buf, sizeof buf, "%.17g", s.k);
    os << buf;
    for (const auto& r : s.reflection) put(std::norm(r));
    for (const auto& t : s.transmission) put(std::norm(t));
    for (int r = 0; r < rails; ++r) put(transmission_phase_offset(s, widget, r));
    os << "\n";
  }
}

}  // namespace qslide
