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

#include "qslide/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "qslide/analytic.hpp"
#include "qslide/errors.hpp"

namespace qslide {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

std::vector<int> window_sites(SiteWindow w) {
  std::vector<int> s(w.count);
  for (int i = 0; i < w.count; ++i) s[i] = w.first + i;
  return s;
}

void check_window(const PacketState& state, SiteWindow w) {
  if (w.count < 1 || w.first < 0 || w.first + w.count > state.amplitudes.size()) {
    throw ConfigError("site window [" + std::to_string(w.first) + ", " +
                      std::to_string(w.first + w.count) + ") lies off the graph");
  }
}

cd window_overlap(const PacketState& bra, SiteWindow wb, const PacketState& ket, SiteWindow wk) {
  cd sum = 0.0;
  for (int i = 0; i < wb.count; ++i) {
    sum += std::conj(bra.amplitudes[wb.first + i]) * ket.amplitudes[wk.first + i];
  }
  return sum;
}

double group_speed(const CircuitLayout& layout) {
  return 2.0 * layout.wire_coupling * std::sin(kPi / 4);
}

}  // namespace

SiteWindow role_window(const WalkGraph& graph, SiteRole role, int rail) {
  const auto sites = graph.sites(role, rail);
  if (sites.empty()) {
    throw ConfigError("graph has no " + std::string(to_string(role)) + " sites on rail " +
                      std::to_string(rail));
  }
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (sites[i] != sites[i - 1] + 1) {
      throw ConfigError(std::string(to_string(role)) + " sites are not contiguous");
    }
  }
  return {sites.front(), static_cast<int>(sites.size())};
}

double MomentumSpectrum::spacing() const {
  return k_grid.size() < 2 ? 2.0 * kPi : k_grid[1] - k_grid[0];
}

double MomentumSpectrum::total_weight() const {
  double s = 0.0;
  for (double d : density) s += d;
  return s * spacing();
}

double MomentumSpectrum::peak() const {
  if (density.empty()) throw NumericalError("momentum spectrum is empty");
  const auto n = static_cast<long>(density.size());
  const long m = std::max_element(density.begin(), density.end()) - density.begin();
  const double y0 = density[(m - 1 + n) % n];
  const double y1 = density[m];
  const double y2 = density[(m + 1) % n];
  const double curvature = y0 - 2.0 * y1 + y2;
  const double shift = curvature < 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
  return wrap_phase(k_grid[m] + shift * spacing());
}

MomentumSpectrum momentum_spectrum(const PacketState& state, SiteWindow window, int padding) {
  check_window(state, window);
  if (padding < 1) throw ConfigError("momentum_spectrum: padding must be >= 1");
  int m_total = padding * window.count;
  m_total += m_total % 2;
  MomentumSpectrum out;
  out.k_grid.resize(m_total);
  out.density.resize(m_total);
  for (int i = 0; i < m_total; ++i) {
    const int m = i - m_total / 2 + 1;  // k in (-pi, pi]
    const double k = kPi * (2.0 * m / m_total);
    cd sum = 0.0;
    for (int j = 0; j < window.count; ++j) {
      sum += state.amplitudes[window.first + j] * std::polar(1.0, -k * j);
    }
    out.k_grid[i] = k;
    out.density[i] = std::norm(sum) / (2.0 * kPi);
  }
  return out;
}

PacketStats packet_stats(const PacketState& state, SiteWindow window) {
  check_window(state, window);
  double p = 0.0;
  double first = 0.0;
  for (int j = 0; j < window.count; ++j) {
    const double w = std::norm(state.amplitudes[window.first + j]);
    p += w;
    first += w * (window.first + j);
  }
  if (!(p > 0.0)) throw NumericalError("packet_stats: no probability inside the window");
  const double center = first / p;
  double second = 0.0;
  for (int j = 0; j < window.count; ++j) {
    const double d = window.first + j - center;
    second += std::norm(state.amplitudes[window.first + j]) * d * d;
  }
  return {center, std::sqrt(second / p), p};
}

GateReportOptions default_report_options(GateKind gate) {
  GateReportOptions o;
  switch (gate) {
    case GateKind::ub:
      o.input_column = 1;
      o.rail_rows = {1};
      break;
    case GateKind::uc:
      o.input_column = 0;
      o.rail_rows = {0, 1};
      break;
    case GateKind::reference:
      o.input_column = 0;
      o.rail_rows = {0};
      break;
  }
  return o;
}

Eigen::Matrix2cd gate_matrix(GateKind gate) {
  const cd i1(0.0, 1.0);
  Eigen::Matrix2cd u;
  switch (gate) {
    case GateKind::ub:
      u << 1.0, 0.0, 0.0, std::polar(1.0, kPi / 4);
      break;
    case GateKind::uc:
      u << i1, 1.0, 1.0, i1;
      u *= -1.0 / std::sqrt(2.0);
      break;
    case GateKind::reference:
      u = Eigen::Matrix2cd::Identity();
      break;
  }
  return u;
}

GateRunReport gate_report(std::span<const PacketState> trajectory, const WalkGraph& graph,
                          std::span<const PacketState> reference_trajectory,
                          const WalkGraph& reference_graph, const Eigen::Matrix2cd& ideal_gate,
                          const GateReportOptions& options) {
  if (trajectory.empty() || reference_trajectory.empty()) {
    throw ConfigError("gate_report: empty trajectory");
  }
  if (trajectory.size() != reference_trajectory.size()) {
    throw ConfigError("gate_report: runs have different sample counts");
  }
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (std::abs(trajectory[i].time - reference_trajectory[i].time) > 1e-12) {
      throw ConfigError("gate_report: runs are sampled at different times");
    }
  }
  if (trajectory.front().amplitudes.size() != graph.n_sites() ||
      reference_trajectory.front().amplitudes.size() != reference_graph.n_sites()) {
    throw ConfigError("gate_report: trajectory does not match its graph");
  }
  const int rails = graph.layout().rails;
  if (static_cast<int>(options.rail_rows.size()) != rails) {
    throw ConfigError("gate_report: need one logical row per output rail");
  }
  if (options.input_column < 0 || options.input_column > 1) {
    throw ConfigError("gate_report: input column must be 0 or 1");
  }
  const SiteWindow ref_out = role_window(reference_graph, SiteRole::output_wire, 0);

  GateRunReport report;
  const PacketState& final_state = trajectory.back();
  const PacketState& ref_final = reference_trajectory.back();
  report.final_time = final_state.time;

  const Eigen::Vector2cd alpha = ideal_gate.col(options.input_column);
  std::vector<SiteWindow> outs;
  cd projected = 0.0;
  for (int r = 0; r < rails; ++r) {
    const SiteWindow w = role_window(graph, SiteRole::output_wire, r);
    if (w.count != ref_out.count) {
      throw ConfigError("gate_report: output wires of gate and reference runs differ in length");
    }
    outs.push_back(w);
    const double p = final_state.probability(window_sites(w));
    report.per_rail_probability.push_back(p);
    report.transmission += p;
    const int row = options.rail_rows[r];
    if (row < 0 || row > 1) throw ConfigError("gate_report: logical rows must be 0 or 1");
    projected += std::conj(alpha[row]) * window_overlap(ref_final, ref_out, final_state, w);
  }
  report.remaining_probability = final_state.norm_squared() - report.transmission;

  const double ref_norm = ref_final.probability(window_sites(ref_out));
  if (!(ref_norm > 0.0)) throw NumericalError("gate_report: reference output is empty");
  report.reference_overlap_fidelity = std::norm(projected) / (ref_norm * ref_norm);

  if (rails >= 2) {
    report.relative_phase = std::arg(window_overlap(final_state, outs[0], final_state, outs[1]));
  } else {
    report.relative_phase = std::arg(window_overlap(ref_final, ref_out, final_state, outs[0]));
  }

  // snapshot nearest the probe time
  std::size_t probe = 0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    if (std::abs(trajectory[i].time - options.probe_time) <
        std::abs(trajectory[probe].time - options.probe_time)) {
      probe = i;
    }
  }
  report.probe_time = trajectory[probe].time;
  report.peak_momentum_at_switch =
      momentum_spectrum(trajectory[probe], role_window(graph, SiteRole::input_wire, 0)).peak();
  return report;
}

double path_to_output(const CircuitLayout& layout, double slide_site, double output_index) {
  return (layout.slide_len - 1 - slide_site) + 1 + (layout.input_len - 1) + layout.through_hops +
         output_index;
}

double default_final_time(const WalkGraph& graph, const PacketState& at_switch) {
  const auto& layout = graph.layout();
  const double x = packet_stats(at_switch, role_window(graph, SiteRole::slide)).center;
  const double d = path_to_output(layout, x, 0.5 * (layout.output_len - 1));
  return at_switch.time + d / group_speed(layout);
}

double input_probe_time(const WalkGraph& graph, const PacketState& at_switch) {
  const auto& layout = graph.layout();
  const double x = packet_stats(at_switch, role_window(graph, SiteRole::slide)).center;
  const double d = (layout.slide_len - 1 - x) + 1 + 0.5 * (layout.input_len - 1);
  return at_switch.time + d / group_speed(layout);
}

double switch_objective(const WalkGraph& graph, const SwitchPropagators& propagators,
                        TuneObjective objective, double t_off, const TuneOptions& options) {
  PacketState psi = PacketState::localized(graph.n_sites(), 0);
  psi.amplitudes = propagators.field_on->apply(psi.amplitudes, t_off);
  psi.time = t_off;
  if (objective == TuneObjective::transmission) {
    const double t_final = default_final_time(graph, psi);
    const Eigen::VectorXcd out = propagators.field_off->apply(psi.amplitudes, t_final - t_off);
    double p = 0.0;
    for (int r = 0; r < graph.layout().rails; ++r) {
      for (int s : graph.sites(SiteRole::output_wire, r)) p += std::norm(out[s]);
    }
    return p;
  }
  const double t_probe = input_probe_time(graph, psi);
  PacketState probe{propagators.field_off->apply(psi.amplitudes, t_probe - t_off), t_probe};
  const SiteWindow input = role_window(graph, SiteRole::input_wire, 0);
  const double held = packet_stats(probe, input).probability;
  if (held < 0.95) {
    throw NumericalError("tune_switch_time: only " + std::to_string(held) +
                             " of the packet is on the input wire at t_off = " +
                             std::to_string(t_off),
                         held);
  }
  return -std::abs(wrap_phase(momentum_spectrum(probe, input).peak() - options.target_momentum));
}

double tune_switch_time(const WalkGraph& graph, TuneObjective objective, double t_lo,
                        double t_hi, int grid, const TuneOptions& options) {
  if (t_lo == t_hi) return t_lo;
  return tune_switch_time(graph, prepare_switch(graph, options.propagator), objective, t_lo, t_hi,
                          grid, options);
}

double tune_switch_time(const WalkGraph& graph, const SwitchPropagators& propagators,
                        TuneObjective objective, double t_lo, double t_hi, int grid,
                        const TuneOptions& options) {
  if (t_lo == t_hi) return t_lo;
  const double full = period(graph.layout().field_slope);
  if (!(t_lo > 0.0 && t_hi > t_lo && t_hi < full)) {
    throw ConfigError("tune_switch_time: range must satisfy 0 < t_lo < t_hi < " +
                      std::to_string(full));
  }
  if (grid < 8) throw ConfigError("tune_switch_time: grid must have at least 8 points");
  auto f = [&](double t) { return switch_objective(graph, propagators, objective, t, options); };

  const double step = (t_hi - t_lo) / (grid - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = f(t_lo + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double best_t = t_lo + best * step;
  double a = t_lo + std::max(best - 1, 0) * step;
  double b = t_lo + std::min(best + 1, grid - 1) * step;
  // analytic seed: the switch time at which the free slide emits the target momentum
  double seed = std::numeric_limits<double>::quiet_NaN();
  try {
    seed = time_for_momentum(options.target_momentum, graph.layout().field_slope);
  } catch (const std::domain_error&) {
  }
  if (seed > t_lo && seed < t_hi) {
    const double v = f(seed);
    if (v > best_value) {
      best_value = v;
      best_t = seed;
      a = std::max(t_lo, seed - step);
      b = std::min(t_hi, seed + step);
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > options.tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t_best = 0.5 * (a + b);
  return f(t_best) >= best_value ? t_best : best_t;
}

}  // namespace qslide
