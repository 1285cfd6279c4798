// Copyright 2026 The Multiport Authors
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
#include "multiport/walk/network.hpp"

#include <numeric>

#include "multiport/core/errors.hpp"
#include "multiport/core/ports.hpp"
#include "multiport/device/closed_form.hpp"

namespace multiport {
namespace {

constexpr double kOverrideTol = 1e-9;

std::string port_lead_name(int vertex, int port) { return "v" + std::to_string(vertex) + "." + port_label(port); }

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

template <Amplitude T>
SquareMatrix<T> to_scalar(const UnitaryMatrix& m) {
  SquareMatrix<T> out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = ScalarOps<T>::from_complex(m(r, c));
  return out;
}

template <Amplitude T>
DeviceGraph<T> coin_graph(const WalkVertex& v) {
  ScatterNode<T> node;
  node.name = v.name;
  node.arms.resize(v.degree);
  node.scatter = v.coin ? to_scalar<T>(*v.coin) : grover_coin<T>(v.degree);
  node.symbols.assign(static_cast<size_t>(v.degree * v.degree), 'c');
  std::vector<std::string> names;
  for (int p = 0; p < v.degree; ++p) names.push_back(port_label(p));
  DeviceGraph<T> g;
  g.add_node(std::move(node), names);
  return g;
}

}  // namespace

void GraphSpec::validate() const {
  if (vertices.empty()) throw SpecError("graph has no vertices");
  std::vector<std::vector<int>> used(vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) {
    const auto& x = vertices[v];
    if (x.degree < 2) throw SpecError("vertex " + std::to_string(v) + " has degree below 2");
    if (x.kind == VertexKind::IdealCoin) {
      if (x.coin) {
        if (x.coin->dim() != x.degree)
          throw SpecError("vertex " + std::to_string(v) + ": coin dimension does not match degree");
        if (!is_unitary(*x.coin, kOverrideTol)) throw SpecError("vertex " + std::to_string(v) + ": coin is not unitary");
      }
    } else {
      if (x.device.ports != x.degree)
        throw SpecError("vertex " + std::to_string(v) + ": port count does not match degree");
      x.device.validate();
    }
    used[v].assign(x.degree, 0);
  }
  auto claim = [&](const PortRef& p, const std::string& what) {
    if (p.vertex < 0 || p.vertex >= static_cast<int>(vertices.size()))
      throw SpecError(what + " references missing vertex " + std::to_string(p.vertex));
    if (p.port < 0 || p.port >= vertices[p.vertex].degree)
      throw SpecError(what + " references missing port " + std::to_string(p.port) + " of vertex " +
                      std::to_string(p.vertex));
    if (used[p.vertex][p.port]++ != 0)
      throw SpecError("port " + std::to_string(p.port) + " of vertex " + std::to_string(p.vertex) + " is used twice");
  };
  for (size_t e = 0; e < edges.size(); ++e) {
    claim(edges[e].a, "edge " + std::to_string(e));
    claim(edges[e].b, "edge " + std::to_string(e));
  }
  for (const auto& l : leads) claim(l.at, "lead '" + l.name + "'");
  for (size_t a = 0; a < leads.size(); ++a)
    for (size_t b = a + 1; b < leads.size(); ++b)
      if (leads[a].name == leads[b].name) throw SpecError("duplicate lead name '" + leads[a].name + "'");
  for (size_t v = 0; v < vertices.size(); ++v)
    for (int p = 0; p < vertices[v].degree; ++p)
      if (used[v][p] == 0)
        throw SpecError("port " + std::to_string(p) + " of vertex " + std::to_string(v) + " is unconnected");
  if (!allow_disconnected) {
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : edges) parent[find_root(parent, e.a.vertex)] = find_root(parent, e.b.vertex);
    for (size_t v = 1; v < vertices.size(); ++v)
      if (find_root(parent, static_cast<int>(v)) != find_root(parent, 0)) throw SpecError("graph is not connected");
  }
}

int GraphSpec::find_lead(const std::string& name) const {
  for (size_t k = 0; k < leads.size(); ++k)
    if (leads[k].name == name) return static_cast<int>(k);
  throw SpecError("no lead named '" + name + "'");
}

GraphSpec GraphSpec::single_vertex(const WalkVertex& v) {
  GraphSpec g;
  g.vertices.push_back(v);
  for (int p = 0; p < v.degree; ++p) g.leads.push_back(WalkLead{port_label(p), PortRef{0, p}});
  return g;
}

template <Amplitude T>
WalkEngine<T>::WalkEngine(GraphSpec spec, DeviceGraph<T> graph, std::vector<int> lead_index,
                          std::vector<std::pair<int, int>> edge_modes, std::vector<std::vector<int>> vertex_nodes,
                          std::vector<std::vector<int>> vertex_mirrors)
    : spec_(std::move(spec)),
      graph_(std::move(graph)),
      lead_index_(std::move(lead_index)),
      edge_modes_(std::move(edge_modes)),
      vertex_nodes_(std::move(vertex_nodes)),
      vertex_mirrors_(std::move(vertex_mirrors)) {}

template <Amplitude T>
StepOverrides<T> WalkEngine<T>::overrides(int step, const std::map<int, VertexOverride>& by_vertex) const {
  StepOverrides<T> out;
  for (const auto& [v, o] : by_vertex) {
    const std::string where = "schedule step " + std::to_string(step) + ", vertex " + std::to_string(v);
    if (v < 0 || v >= static_cast<int>(spec_.vertices.size())) throw SpecError(where + ": no such vertex");
    const WalkVertex& vx = spec_.vertices[v];
    if (vx.kind == VertexKind::IdealCoin) {
      if (!o.corners.empty()) throw SpecError(where + ": corner parameters given for an ideal coin");
      if (!o.coin) continue;
      if (o.coin->dim() != vx.degree) throw SpecError(where + ": coin dimension does not match degree");
      if (!is_unitary(*o.coin, kOverrideTol)) throw SpecError(where + ": coin is not unitary");
      out.node_scatter[vertex_nodes_[v].front()] = to_scalar<T>(*o.coin);
    } else {
      if (o.coin) throw SpecError(where + ": coin given for a physical vertex");
      if (o.corners.empty()) continue;
      const auto& nodes = vertex_nodes_[v];
      const auto& mirrors = vertex_mirrors_[v];
      if (o.corners.size() != 1 && o.corners.size() != nodes.size())
        throw SpecError(where + ": expected 1 or " + std::to_string(nodes.size()) + " corner parameter sets");
      for (size_t k = 0; k < nodes.size(); ++k) {
        const VertexParams& p = o.corners.size() == 1 ? o.corners.front() : o.corners[k];
        if (!p.is_valid(kOverrideTol)) throw SpecError(where + ": corner parameters are not unitary");
        out.node_scatter[nodes[k]] = corner_node<T>(p).scatter;
        out.mirror_factor[mirrors[k]] = ScalarOps<T>::from_complex(p.mirror);
      }
    }
  }
  return out;
}

template <Amplitude T>
WalkEngine<T> build_network(const GraphSpec& g) {
  g.validate();
  DeviceGraph<T> graph;
  std::vector<std::vector<int>> vertex_nodes(g.vertices.size());
  std::vector<std::vector<int>> vertex_mirrors(g.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    const DeviceGraph<T> sub = x.kind == VertexKind::IdealCoin ? coin_graph<T>(x) : compile<T>(x.device);
    const int mirror_off = static_cast<int>(graph.mirrors().size());
    const int node_off = graph.append(sub, static_cast<int>(v), "v" + std::to_string(v) + ".");
    for (size_t k = 0; k < sub.nodes().size(); ++k) vertex_nodes[v].push_back(node_off + static_cast<int>(k));
    for (size_t k = 0; k < sub.mirrors().size(); ++k) vertex_mirrors[v].push_back(mirror_off + static_cast<int>(k));
  }
  std::vector<std::pair<int, int>> edge_modes;
  for (const auto& e : g.edges) {
    const int first = static_cast<int>(graph.modes().size());
    graph.connect(graph.find_lead(port_lead_name(e.a.vertex, e.a.port)),
                  graph.find_lead(port_lead_name(e.b.vertex, e.b.port)),
                  ScalarOps<T>::from_complex(std::polar(1.0, e.phase)));
    edge_modes.emplace_back(first, first + 1);
  }
  std::vector<int> lead_index;
  for (const auto& l : g.leads) lead_index.push_back(graph.find_lead(port_lead_name(l.at.vertex, l.at.port)));
  return WalkEngine<T>(g, std::move(graph), std::move(lead_index), std::move(edge_modes), std::move(vertex_nodes),
                       std::move(vertex_mirrors));
}

template <Amplitude T>
WalkSeries<T> run_walk(const WalkEngine<T>& engine, int input, int steps, const Schedule* schedule) {
  const GraphSpec& g = engine.spec();
  if (steps < 1) throw SpecError("a walk needs at least one step");
  if (input < 0 || input >= static_cast<int>(g.leads.size())) throw SpecError("no such input lead");
  const int leads = static_cast<int>(g.leads.size());
  const DeviceGraph<T>& graph = engine.graph();

  // Owning vertex of every non-link mode.
  std::vector<int> mode_vertex(graph.modes().size(), -1);
  for (size_t m = 0; m < graph.modes().size(); ++m) {
    const DirectedMode& d = graph.modes()[m];
    if (d.kind == ModeKind::Link) continue;
    const int node = d.kind == ModeKind::FromMirror ? d.to_node : d.from_node;
    mode_vertex[m] = graph.nodes()[node].group;
  }

  WalkSeries<T> series;
  series.input = input;
  Evolution<T> evo(graph);
  std::vector<RealOf<T>> cumulative(leads, RealOf<T>{});
  for (int s = 1; s <= steps; ++s) {
    StepOverrides<T> ov;
    if (schedule != nullptr) {
      auto it = schedule->steps.find(s);
      if (it != schedule->steps.end()) ov = engine.overrides(s, it->second);
    }
    const StepOverrides<T>* ovp = ov.empty() ? nullptr : &ov;
    const std::vector<T> exits = s == 1 ? evo.inject(engine.graph_lead(input), ScalarOps<T>::one(), ovp) : evo.step(ovp);

    WalkFrame<T> f;
    f.step = s;
    for (int l = 0; l < leads; ++l) {
      const T& a = exits[engine.graph_lead(l)];
      f.exit_amplitudes.push_back(a);
      f.exit_probability.push_back(ScalarOps<T>::norm(a));
      cumulative[l] += f.exit_probability.back();
    }
    f.cumulative_exit = cumulative;
    const auto& modes = evo.modes();
    for (size_t e = 0; e < g.edges.size(); ++e) {
      const auto [ab, ba] = engine.edge_modes(static_cast<int>(e));
      f.edge_probability.push_back(ScalarOps<T>::norm(modes[ab]) + ScalarOps<T>::norm(modes[ba]));
    }
    f.vertex_probability.assign(g.vertices.size(), RealOf<T>{});
    for (size_t m = 0; m < modes.size(); ++m)
      if (mode_vertex[m] >= 0) f.vertex_probability[mode_vertex[m]] += ScalarOps<T>::norm(modes[m]);
    f.internal = evo.internal_norm2();
    f.total = f.internal;
    for (const auto& c : cumulative) f.total += c;
    if constexpr (ScalarOps<T>::kExact) {
      if (!(f.total == RealOf<T>(1))) throw InvariantError("walk lost probability at step " + std::to_string(s));
    } else {
      if (std::abs(f.total - 1.0) > 1e-9) throw InvariantError("walk lost probability at step " + std::to_string(s));
    }
    series.frames.push_back(std::move(f));
  }
  return series;
}

WalkCoherence coherence_budget(const TimingInputs& in) {
  WalkCoherence out;
  out.timing = assess(in);
  out.budget = coherence_budget(out.timing.tau_coh, out.timing.T_c);
  return out;
}

template class WalkEngine<Complex>;
template class WalkEngine<ExactComplex>;
template WalkEngine<Complex> build_network<Complex>(const GraphSpec&);
template WalkEngine<ExactComplex> build_network<ExactComplex>(const GraphSpec&);
template WalkSeries<Complex> run_walk<Complex>(const WalkEngine<Complex>&, int, int, const Schedule*);
template WalkSeries<ExactComplex> run_walk<ExactComplex>(const WalkEngine<ExactComplex>&, int, int, const Schedule*);

}  // namespace multiport
