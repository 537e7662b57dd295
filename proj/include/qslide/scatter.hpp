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

#ifndef QSLIDE_SCATTER_HPP_
#define QSLIDE_SCATTER_HPP_

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "qslide/analytic.hpp"
#include "qslide/assembly.hpp"

namespace qslide {

/// Stationary scattering state of a widget between semi-infinite unit-coupling
/// leads at energy E = 2 cos k. On every lead the amplitude at distance y from
/// its port is (incident) e^{-iky} + A e^{iky}; for k in (-pi, 0) the first
/// term moves toward the widget.
struct ScatterSolution {
  double k = 0.0;
  int incident_rail = 0;
  std::vector<std::complex<double>> reflection;    // per input rail
  std::vector<std::complex<double>> transmission;  // per output rail
  std::vector<std::complex<double>> internal;      // per widget site

  /// sum |R|^2 + sum |T|^2; equals 1 for real k.
  double flux() const;
  double total_transmission() const;
};

/// Throws std::domain_error unless k in (-pi, 0), ResonanceError when a bound
/// state at E(k) couples to the leads and the system has no solution.
ScatterSolution solve_plane_wave(const Widget& widget, double k, int incident_rail = 0);

/// Element-wise solve_plane_wave. A failing point is rethrown with its grid
/// index prefixed to the message.
std::vector<ScatterSolution> sweep_k(const Widget& widget, std::span<const double> k_grid,
                                     int incident_rail = 0);

/// exp(i k hops): transmission of a bare chain segment of `hops` links.
std::complex<double> bare_transmission(int hops, double k);

/// arg T_rail(k) - k * widget.reference_hops, wrapped into (-pi, pi].
double transmission_phase_offset(const ScatterSolution& solution, const Widget& widget,
                                 int rail);

/// Total transmission sum_r |T_r(k)|^2 as an interpolation table.
TransmissionTable transmission_table(std::span<const ScatterSolution> solutions);

/// Uniform grid of n points strictly inside (-pi, 0) (cell midpoints).
std::vector<double> midpoint_k_grid(int n);

/// CSV: k, |R_r|^2 per input rail, |T_r|^2 per output rail, phase offsets.
void write_transmission_csv(std::ostream& os, const Widget& widget,
                            std::span<const ScatterSolution> solutions);

}  // namespace qslide

#endif  // QSLIDE_SCATTER_HPP_
