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

#ifndef QSLIDE_ASSEMBLY_HPP_
#define QSLIDE_ASSEMBLY_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qslide {

struct Edge {
  int a = 0;
  int b = 0;
  double coupling = 1.0;
};

enum class PortDirection { in, out };

/// Attachment point of a semi-infinite lead: widget site `site` is joined to
/// the input (or output) wire of logical rail `rail`.
struct Port {
  PortDirection direction = PortDirection::in;
  int rail = 0;
  int site = 0;
};

/// A small scatterer inserted between input and output wires. Couplings are
/// relative to the wire coupling.
struct Widget {
  std::string name;
  int n_sites = 0;
  std::vector<Edge> edges;
  std::vector<Port> ports;
  // Hop count of the bare wire segment the widget stands in for; transmitted
  // phases are quoted relative to exp(i k reference_hops).
  int reference_hops = 0;
  // identity | phase_pi_4 | basis_change
  std::string expect = "identity";

  int rail_count() const;
  /// Sites attached to leads of one direction, ordered by rail.
  std::vector<int> port_sites(PortDirection direction) const;
  /// Graph distance from the rail's input port to its output port.
  int path_hops(int rail) const;
};

/// Parse the line-oriented widget description format (see data/widgets).
/// Structural checks only; throws ConfigError.
Widget parse_widget(std::string_view text);

/// Check the widget against its declared `expect` behavior with the
/// plane-wave solver. Throws WidgetMismatchError with the worst deviation.
void validate_widget(const Widget& widget);

/// parse_widget + validate_widget on a file.
Widget load_widget(const std::filesystem::path& path);

/// Single bare site with coincident input and output ports.
Widget bare_link_widget();

enum class SiteRole { slide, input_wire, widget, output_wire };
inline constexpr int kNoRail = -1;

struct SiteTag {
  SiteRole role = SiteRole::slide;
  int rail = kNoRail;
};

enum class GateKind { ub, uc, reference };

/// Segment lengths and through-path geometry of an assembled circuit.
struct CircuitLayout {
  GateKind gate = GateKind::reference;
  int slide_len = 0;
  int input_len = 0;
  int output_len = 0;
  int rails = 1;
  int through_hops = 0;  // rail-0 hops from the last input site to the first output site
  double wire_coupling = 1.0;
  double field_slope = 0.0;
};

/// Weighted undirected graph with on-site fields and per-site role tags.
/// Validated on construction: no self loops or duplicate edges, positive
/// couplings, every site reachable from site 0, one tag per site.
class WalkGraph {
 public:
  WalkGraph(int n_sites, std::vector<Edge> edges, std::vector<double> fields,
            std::vector<SiteTag> tags, CircuitLayout layout = {});

  int n_sites() const { return n_sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& fields() const { return fields_; }
  const std::vector<SiteTag>& tags() const { return tags_; }
  const CircuitLayout& layout() const { return layout_; }

  /// Sites whose field the switch-off step zeroes.
  std::vector<int> slide_sites() const;
  /// Sites of one role and rail, in wire order (away from the slide).
  std::vector<int> sites(SiteRole role, int rail = kNoRail) const;

  Eigen::SparseMatrix<double> hamiltonian(bool slide_fields_on = true) const;
  Eigen::MatrixXd dense(bool slide_fields_on = true) const;

 private:
  int n_sites_;
  std::vector<Edge> edges_;
  std::vector<double> fields_;
  std::vector<SiteTag> tags_;
  CircuitLayout layout_;
};

/// Shortest wire that holds a packet of width 6 sigma for this slide.
int minimum_wire_length(int slide_len);

/// Slide -> input wire(s) -> widget -> output wire(s). For `reference` the
/// widget is replaced by a bare chain of widget.reference_hops + 1 sites on a
/// single rail. Throws ConfigError on port/arity mismatch or short wires.
WalkGraph build_gate_circuit(GateKind gate, int slide_len, int input_len, int output_len,
                             double a, const Widget& widget);

/// Wire lengths for a slide length under the ladder rule: +25 sites on each
/// wire per +200 slide sites, starting from 151/152 at 200.
std::pair<int, int> ladder_wire_lengths(int slide_len);

/// Plain-text edge-list export, one site or edge per line.
void write_graph(std::ostream& os, const WalkGraph& graph);

std::string_view to_string(SiteRole role);
std::string_view to_string(GateKind gate);
GateKind parse_gate_kind(std::string_view text);

}  // namespace qslide

#endif  // QSLIDE_ASSEMBLY_HPP_
