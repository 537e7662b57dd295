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

#include "qslide/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "qslide/analytic.hpp"
#include "qslide/errors.hpp"
#include "qslide/scatter.hpp"

namespace qslide {

namespace {

std::vector<std::vector<int>> adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

std::vector<int> bfs_distances(int n, const std::vector<Edge>& edges, int source) {
  const auto adj = adjacency(n, edges);
  std::vector<int> dist(n, -1);
  std::queue<int> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

void check_edges(int n, const std::vector<Edge>& edges, const std::string& who) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n) {
      throw ConfigError(who + ": edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                        ") references a missing site");
    }
    if (e.a == e.b) throw ConfigError(who + ": self loop at site " + std::to_string(e.a));
    if (!(e.coupling > 0.0) || !std::isfinite(e.coupling)) {
      throw ConfigError(who + ": couplings must be finite and positive");
    }
    if (!seen.insert(std::minmax(e.a, e.b)).second) {
      throw ConfigError(who + ": duplicate edge (" + std::to_string(e.a) + ", " +
                        std::to_string(e.b) + ")");
    }
  }
}

}  // namespace

int Widget::rail_count() const {
  int rails = 0;
  for (const auto& p : ports) rails = std::max(rails, p.rail + 1);
  return rails;
}

std::vector<int> Widget::port_sites(PortDirection direction) const {
  std::vector<Port> selected;
  for (const auto& p : ports) {
    if (p.direction == direction) selected.push_back(p);
  }
  std::sort(selected.begin(), selected.end(),
            [](const Port& x, const Port& y) { return x.rail < y.rail; });
  std::vector<int> out;
  for (const auto& p : selected) out.push_back(p.site);
  return out;
}

int Widget::path_hops(int rail) const {
  const auto ins = port_sites(PortDirection::in);
  const auto outs = port_sites(PortDirection::out);
  if (rail < 0 || rail >= static_cast<int>(ins.size()) ||
      rail >= static_cast<int>(outs.size())) {
    throw ConfigError("widget " + name + ": no rail " + std::to_string(rail));
  }
  const int d = bfs_distances(n_sites, edges, ins[rail])[outs[rail]];
  if (d < 0) throw ConfigError("widget " + name + ": rail ports are disconnected");
  return d;
}

Widget parse_widget(std::string_view text) {
  Widget w;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_sites = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw ConfigError("widget line " + std::to_string(line_no) + ": " + msg);
    };
    if (key == "widget") {
      if (!(fields >> w.name)) fail("expected a name");
    } else if (key == "sites") {
      if (!(fields >> w.n_sites) || w.n_sites < 1) fail("expected a positive site count");
      have_sites = true;
    } else if (key == "edge") {
      Edge e;
      if (!(fields >> e.a >> e.b)) fail("expected 'edge A B [coupling]'");
      if (!(fields >> e.coupling)) e.coupling = 1.0;
      w.edges.push_back(e);
    } else if (key == "port") {
      std::string dir;
      Port p;
      if (!(fields >> dir >> p.rail >> p.site)) fail("expected 'port in|out RAIL SITE'");
      if (dir == "in") {
        p.direction = PortDirection::in;
      } else if (dir == "out") {
        p.direction = PortDirection::out;
      } else {
        fail("port direction must be 'in' or 'out'");
      }
      w.ports.push_back(p);
    } else if (key == "reference_hops") {
      if (!(fields >> w.reference_hops) || w.reference_hops < 0) {
        fail("expected a non-negative hop count");
      }
    } else if (key == "expect") {
      if (!(fields >> w.expect)) fail("expected a behavior label");
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_sites) throw ConfigError("widget: missing 'sites'");
  if (w.name.empty()) throw ConfigError("widget: missing 'widget NAME'");
  check_edges(w.n_sites, w.edges, "widget " + w.name);

  std::set<std::pair<int, int>> seen;
  for (const auto& p : w.ports) {
    if (p.site < 0 || p.site >= w.n_sites) {
      throw ConfigError("widget " + w.name + ": port site out of range");
    }
    if (p.rail < 0) throw ConfigError("widget " + w.name + ": negative rail id");
    if (!seen.insert({static_cast<int>(p.direction), p.rail}).second) {
      throw ConfigError("widget " + w.name + ": duplicate port for rail " +
                        std::to_string(p.rail));
    }
  }
  const auto ins = w.port_sites(PortDirection::in);
  const auto outs = w.port_sites(PortDirection::out);
  if (ins.empty() || ins.size() != outs.size() ||
      static_cast<int>(ins.size()) != w.rail_count()) {
    throw ConfigError("widget " + w.name + ": need one in and one out port per rail");
  }
  for (const auto* group : {&ins, &outs}) {
    if (std::set<int>(group->begin(), group->end()).size() != group->size()) {
      throw ConfigError("widget " + w.name + ": ports of one direction must be distinct sites");
    }
  }
  const auto dist = bfs_distances(w.n_sites, w.edges, 0);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; })) {
    throw ConfigError("widget " + w.name + ": graph is disconnected");
  }
  if (w.expect != "identity" && w.expect != "phase_pi_4" && w.expect != "basis_change") {
    throw ConfigError("widget " + w.name + ": unknown expect label '" + w.expect + "'");
  }
  return w;
}

void validate_widget(const Widget& widget) {
  constexpr double kPi = std::numbers::pi;
  const double k_gate = -kPi / 4;
  const int rails = widget.rail_count();
  double worst = 0.0;
  auto fail_if = [&](double deviation, double tol, const std::string& what) {
    worst = std::max(worst, deviation);
    if (deviation > tol) {
      throw WidgetMismatchError("widget " + widget.name + ": " + what + " off by " +
                                    std::to_string(deviation),
                                deviation);
    }
  };

  if (widget.expect == "identity") {
    for (int j = 0; j < 64; ++j) {
      const double k = -kPi * (j + 0.5) / 64;
      for (int r = 0; r < rails; ++r) {
        const auto sol = solve_plane_wave(widget, k, r);
        const auto rel = sol.transmission[r] / bare_transmission(widget.reference_hops, k);
        fail_if(std::abs(rel - 1.0), 1e-9, "identity transmission");
      }
    }
  } else if (widget.expect == "phase_pi_4") {
    if (rails != 1) throw WidgetMismatchError("phase widget must have one rail", 1.0);
    for (int j = 0; j < 200; ++j) {
      const double k = -kPi * (j + 0.5) / 200;
      const auto sol = solve_plane_wave(widget, k);
      fail_if(std::abs(std::norm(sol.transmission[0]) - transmission_b(k)), 1e-9,
              "|T(k)|^2 against the closed form");
    }
    const auto sol = solve_plane_wave(widget, k_gate);
    fail_if(std::abs(std::norm(sol.transmission[0]) - 1.0), 1e-9, "|T(-pi/4)|^2");
    fail_if(std::abs(wrap_phase(transmission_phase_offset(sol, widget, 0) - kPi / 4)), 1e-6,
            "transmitted phase at -pi/4");
  } else if (widget.expect == "basis_change") {
    if (rails != 2) throw WidgetMismatchError("basis-change widget must have two rails", 1.0);
    // Transmission block, columns = incident rail, referred to bare wires.
    Eigen::Matrix2cd block;
    for (int s = 0; s < 2; ++s) {
      const auto sol = solve_plane_wave(widget, k_gate, s);
      for (int r = 0; r < 2; ++r) {
        fail_if(std::abs(std::norm(sol.transmission[r]) - 0.5), 1e-6, "per-rail |T|^2");
        block(r, s) = sol.transmission[r] / bare_transmission(widget.reference_hops, k_gate);
      }
      for (const auto& refl : sol.reflection) fail_if(std::abs(refl), 1e-6, "reflection");
    }
    const std::complex<double> i1(0.0, 1.0);
    Eigen::Matrix2cd ideal;
    ideal << i1, 1.0, 1.0, i1;
    ideal *= -1.0 / std::sqrt(2.0);
    // equal up to a global phase
    const std::complex<double> overlap = (ideal.adjoint() * block).trace() / 2.0;
    fail_if(std::abs(1.0 - std::abs(overlap)), 1e-6, "U_c transmission block");
    fail_if((block - overlap * ideal).norm(), 1e-6, "U_c transmission block");
  }
}

Widget load_widget(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open widget file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  Widget w = parse_widget(buffer.str());
  validate_widget(w);
  return w;
}

Widget bare_link_widget() {
  Widget w;
  w.name = "bare";
  w.n_sites = 1;
  w.ports = {{PortDirection::in, 0, 0}, {PortDirection::out, 0, 0}};
  w.reference_hops = 0;
  w.expect = "identity";
  return w;
}

WalkGraph::WalkGraph(int n_sites, std::vector<Edge> edges, std::vector<double> fields,
                     std::vector<SiteTag> tags, CircuitLayout layout)
    : n_sites_(n_sites),
      edges_(std::move(edges)),
      fields_(std::move(fields)),
      tags_(std::move(tags)),
      layout_(layout) {
  if (n_sites_ < 1) throw ConfigError("WalkGraph: need at least one site");
  if (static_cast<int>(fields_.size()) != n_sites_ ||
      static_cast<int>(tags_.size()) != n_sites_) {
    throw ConfigError("WalkGraph: fields and roles must cover every site exactly once");
  }
  check_edges(n_sites_, edges_, "WalkGraph");
  const auto dist = bfs_distances(n_sites_, edges_, 0);
  for (int s = 0; s < n_sites_; ++s) {
    if (dist[s] < 0) {
      throw ConfigError("WalkGraph: site " + std::to_string(s) + " unreachable from site 0");
    }
  }
}

std::vector<int> WalkGraph::slide_sites() const { return sites(SiteRole::slide); }

std::vector<int> WalkGraph::sites(SiteRole role, int rail) const {
  std::vector<int> out;
  for (int s = 0; s < n_sites_; ++s) {
    if (tags_[s].role == role && (rail == kNoRail || tags_[s].rail == rail)) out.push_back(s);
  }
  return out;
}

Eigen::SparseMatrix<double> WalkGraph::hamiltonian(bool slide_fields_on) const {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * edges_.size() + n_sites_);
  for (const auto& e : edges_) {
    entries.emplace_back(e.a, e.b, e.coupling);
    entries.emplace_back(e.b, e.a, e.coupling);
  }
  for (int s = 0; s < n_sites_; ++s) {
    const bool zeroed = !slide_fields_on && tags_[s].role == SiteRole::slide;
    if (!zeroed && fields_[s] != 0.0) entries.emplace_back(s, s, fields_[s]);
  }
  Eigen::SparseMatrix<double> h(n_sites_, n_sites_);
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::MatrixXd WalkGraph::dense(bool slide_fields_on) const {
  return Eigen::MatrixXd(hamiltonian(slide_fields_on));
}

int minimum_wire_length(int slide_len) {
  // widest packet the slide can emit: q(1-q) <= 1/4 on a (2S-1)-degree chain
  const double sigma_max = 0.5 * std::sqrt(2.0 * slide_len - 1.0);
  return static_cast<int>(std::ceil(6.0 * sigma_max));
}

std::pair<int, int> ladder_wire_lengths(int slide_len) {
  const int extra = 25 * (slide_len - 200) / 200;
  return {151 + extra, 152 + extra};
}

WalkGraph build_gate_circuit(GateKind gate, int slide_len, int input_len, int output_len,
                             double a, const Widget& widget) {
  if (slide_len < 10) throw ConfigError("build_gate_circuit: slide_len must be >= 10");
  if (!std::isfinite(a)) throw ConfigError("build_gate_circuit: field slope must be finite");
  const int min_len = minimum_wire_length(slide_len);
  if (input_len < min_len || output_len < min_len) {
    throw ConfigError("build_gate_circuit: wires must hold 6 sigma of the packet; need at least " +
                      std::to_string(min_len) + " sites, got input " +
                      std::to_string(input_len) + ", output " + std::to_string(output_len));
  }
  const int want_rails = gate == GateKind::uc ? 2 : 1;
  if (gate != GateKind::reference && widget.rail_count() != want_rails) {
    throw ConfigError("build_gate_circuit: gate " + std::string(to_string(gate)) + " needs " +
                      std::to_string(2 * want_rails) + " widget ports, widget '" + widget.name +
                      "' has " + std::to_string(widget.ports.size()));
  }

  const double wire = slide_len;  // junction coupling J_S = sqrt(S * S)
  std::vector<Edge> edges;
  std::vector<double> fields;
  std::vector<SiteTag> tags;
  auto add_site = [&](SiteRole role, int rail, double field) {
    fields.push_back(field);
    tags.push_back({role, rail});
    return static_cast<int>(fields.size()) - 1;
  };

  for (int n = 0; n < slide_len; ++n) {
    add_site(SiteRole::slide, kNoRail, a * n);
    if (n > 0) edges.push_back({n - 1, n, std::sqrt(n * (2.0 * slide_len - n))});
  }

  const int rails = want_rails;
  std::vector<std::vector<int>> inputs(rails);
  for (int r = 0; r < rails; ++r) {
    for (int i = 0; i < input_len; ++i) {
      const int s = add_site(SiteRole::input_wire, r, 0.0);
      if (i > 0) edges.push_back({s - 1, s, wire});
      inputs[r].push_back(s);
    }
  }
  edges.push_back({slide_len - 1, inputs[0].front(), wire});

  std::vector<int> in_ports;
  std::vector<int> out_ports;
  int through = 0;
  if (gate == GateKind::reference) {
    const int len = widget.reference_hops + 1;
    const int first = static_cast<int>(fields.size());
    for (int i = 0; i < len; ++i) {
      add_site(SiteRole::widget, kNoRail, 0.0);
      if (i > 0) edges.push_back({first + i - 1, first + i, wire});
    }
    in_ports = {first};
    out_ports = {first + len - 1};
    through = widget.reference_hops + 2;
  } else {
    const int first = static_cast<int>(fields.size());
    for (int i = 0; i < widget.n_sites; ++i) add_site(SiteRole::widget, kNoRail, 0.0);
    for (const auto& e : widget.edges) {
      edges.push_back({first + e.a, first + e.b, wire * e.coupling});
    }
    for (int s : widget.port_sites(PortDirection::in)) in_ports.push_back(first + s);
    for (int s : widget.port_sites(PortDirection::out)) out_ports.push_back(first + s);
    through = widget.path_hops(0) + 2;
  }
  for (int r = 0; r < rails; ++r) edges.push_back({inputs[r].back(), in_ports[r], wire});

  for (int r = 0; r < rails; ++r) {
    for (int i = 0; i < output_len; ++i) {
      const int s = add_site(SiteRole::output_wire, r, 0.0);
      edges.push_back({i == 0 ? out_ports[r] : s - 1, s, wire});
    }
  }

  CircuitLayout layout;
  layout.gate = gate;
  layout.slide_len = slide_len;
  layout.input_len = input_len;
  layout.output_len = output_len;
  layout.rails = rails;
  layout.through_hops = through;
  layout.wire_coupling = wire;
  layout.field_slope = a;

  const int n = static_cast<int>(fields.size());
  WalkGraph graph(n, std::move(edges), std::move(fields), std::move(tags), layout);

  // Wires continue the slide: every wire edge carries the junction coupling.
  for (const auto& e : graph.edges()) {
    const auto ra = graph.tags()[e.a].role;
    const auto rb = graph.tags()[e.b].role;
    const bool wire_edge = (ra == SiteRole::input_wire || ra == SiteRole::output_wire) &&
                           (rb == SiteRole::input_wire || rb == SiteRole::output_wire);
    if (wire_edge && e.coupling != wire) {
      throw NumericalError("build_gate_circuit: wire coupling discontinuity");
    }
  }
  return graph;
}

void write_graph(std::ostream& os, const WalkGraph& graph) {
  os << "# qslide graph: site INDEX FIELD ROLE RAIL / edge A B COUPLING\n";
  os << "sites " << graph.n_sites() << "\n";
  char buf[64];
  for (int s = 0; s < graph.n_sites(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", graph.fields()[s]);
    os << "site " << s << ' ' << buf << ' ' << to_string(graph.tags()[s].role) << ' '
       << graph.tags()[s].rail << "\n";
  }
  for (const auto& e : graph.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.coupling);
    os << "edge " << e.a << ' ' << e.b << ' ' << buf << "\n";
  }
}

std::string_view to_string(SiteRole role) {
  switch (role) {
    case SiteRole::slide:
      return "slide";
    case SiteRole::input_wire:
      return "input_wire";
    case SiteRole::widget:
      return "widget";
    case SiteRole::output_wire:
      return "output_wire";
  }
  return "?";
}

std::string_view to_string(GateKind gate) {
  switch (gate) {
    case GateKind::ub:
      return "ub";
    case GateKind::uc:
      return "uc";
    case GateKind::reference:
      return "reference";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view text) {
  if (text == "ub") return GateKind::ub;
  if (text == "uc") return GateKind::uc;
  if (text == "reference") return GateKind::reference;
  throw ConfigError("unknown gate '" + std::string(text) + "' (expected ub, uc or reference)");
}

}  // namespace qslide
