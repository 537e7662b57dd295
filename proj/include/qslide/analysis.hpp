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

#ifndef QSLIDE_ANALYSIS_HPP_
#define QSLIDE_ANALYSIS_HPP_

#include <Eigen/Dense>
#include <numbers>
#include <span>
#include <vector>

#include "qslide/assembly.hpp"
#include "qslide/propagate.hpp"

namespace qslide {

/// Contiguous block of sites [first, first + count).
struct SiteWindow {
  int first = 0;
  int count = 0;
};

/// The sites of one role and rail as a window; throws ConfigError if they
/// are absent or not contiguous.
SiteWindow role_window(const WalkGraph& graph, SiteRole role, int rail = kNoRail);

struct MomentumSpectrum {
  std::vector<double> k_grid;   // ascending, in (-pi, pi]
  std::vector<double> density;  // sum(density) * spacing() == window probability

  double spacing() const;
  double total_weight() const;
  /// Maximum bin refined by a parabola through it and its two neighbours.
  double peak() const;
};

/// Windowed DFT, psi~(k) = sum_j psi_j e^{-ikj}, zero-padded to
/// `padding` times the window length. A packet with site phase e^{i theta j}
/// peaks at k = theta.
MomentumSpectrum momentum_spectrum(const PacketState& state, SiteWindow window,
                                   int padding = 4);

struct PacketStats {
  double center = 0.0;  // absolute site index
  double width = 0.0;
  double probability = 0.0;
};

/// Throws NumericalError if the window holds no probability.
PacketStats packet_stats(const PacketState& state, SiteWindow window);

struct GateRunReport {
  double transmission = 0.0;  // final-time probability on all output wires
  std::vector<double> per_rail_probability;
  double remaining_probability = 0.0;  // everything not on an output wire
  double relative_phase = 0.0;  // two rails: arg <out_0|out_1>; one rail: arg <ref|out_0>
  double reference_overlap_fidelity = 0.0;
  double peak_momentum_at_switch = 0.0;  // on input rail 0 at the probe sample
  double probe_time = 0.0;
  double final_time = 0.0;
};

struct GateReportOptions {
  int input_column = 0;         // logical input state the circuit prepares
  std::vector<int> rail_rows;   // logical output row carried by each output rail
  double probe_time = 0.404 * std::numbers::pi;
};

/// U_b circuits carry logical |1> on their single rail; U_c circuits start in
/// |0> and carry rows 0 and 1 on rails 0 and 1.
GateReportOptions default_report_options(GateKind gate);

/// Scores the final snapshot of `trajectory` against the reference run. The
/// fidelity is |sum_r conj(alpha_row(r)) <ref|out_r>|^2 / ||ref||^4 with
/// alpha = ideal_gate * e_input, output wires compared site-by-site from the
/// widget outward. Throws ConfigError on misaligned runs.
GateRunReport gate_report(std::span<const PacketState> trajectory, const WalkGraph& graph,
                          std::span<const PacketState> reference_trajectory,
                          const WalkGraph& reference_graph, const Eigen::Matrix2cd& ideal_gate,
                          const GateReportOptions& options);

Eigen::Matrix2cd gate_matrix(GateKind gate);

/// Rail-0 path length from a slide site to output-wire index `output_index`.
double path_to_output(const CircuitLayout& layout, double slide_site, double output_index);

/// Time at which the packet centroid, on the slide at `at_switch.time`,
/// reaches the middle of the output wire moving at 2 J sin(pi/4).
double default_final_time(const WalkGraph& graph, const PacketState& at_switch);

/// Time at which the centroid reaches the middle of input rail 0.
double input_probe_time(const WalkGraph& graph, const PacketState& at_switch);

enum class TuneObjective { transmission, peak_momentum };

struct TuneOptions {
  PropagatorOptions propagator;
  double target_momentum = -std::numbers::pi / 4;
  double tolerance = 1e-6;  // on t_off
};

/// Objective value for one switch time; larger is better. transmission: the
/// output probability at default_final_time. peak_momentum: minus the
/// distance of the input-wire peak from the target at input_probe_time.
double switch_objective(const WalkGraph& graph, const SwitchPropagators& propagators,
                        TuneObjective objective, double t_off, const TuneOptions& options = {});

/// Grid search over [t_lo, t_hi], plus the analytic seed time_for_momentum of
/// the target when it lies inside, then golden-section refinement around the
/// best point. Returns t_lo for a degenerate range.
double tune_switch_time(const WalkGraph& graph, TuneObjective objective, double t_lo,
                        double t_hi, int grid, const TuneOptions& options = {});
double tune_switch_time(const WalkGraph& graph, const SwitchPropagators& propagators,
                        TuneObjective objective, double t_lo, double t_hi, int grid,
                        const TuneOptions& options = {});

}  // namespace qslide

#endif  // QSLIDE_ANALYSIS_HPP_
