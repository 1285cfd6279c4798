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
#include "multiport/device/graph.hpp"

#include <algorithm>
#include <cmath>

#include "multiport/core/ports.hpp"

namespace multiport {

template <Amplitude T>
int DeviceGraph<T>::count_modes(ModeKind kind) const {
  return static_cast<int>(std::count_if(modes_.begin(), modes_.end(), [kind](const auto& m) { return m.kind == kind; }));
}

template <Amplitude T>
int DeviceGraph<T>::find_lead(const std::string& name) const {
  for (size_t k = 0; k < leads_.size(); ++k)
    if (leads_[k].name == name) return static_cast<int>(k);
  throw SpecError("no lead named '" + name + "'");
}

template <Amplitude T>
int DeviceGraph<T>::add_node(ScatterNode<T> node, const std::vector<std::string>& lead_names) {
  const int k = static_cast<int>(node.arms.size());
  if (node.scatter.dim() != k) throw DimensionError("scatter matrix size does not match arm count");
  if (static_cast<int>(node.symbols.size()) != k * k) node.symbols.assign(static_cast<size_t>(k) * k, 'c');
  const int id = static_cast<int>(nodes_.size());
  for (size_t a = 0; a < lead_names.size() && a < node.arms.size(); ++a) {
    node.arms[a].lead = static_cast<int>(leads_.size());
    leads_.push_back(Lead{lead_names[a], id, static_cast<int>(a)});
  }
  nodes_.push_back(std::move(node));
  return id;
}

template <Amplitude T>
int DeviceGraph<T>::add_mode(DirectedMode mode) {
  modes_.push_back(mode);
  return static_cast<int>(modes_.size()) - 1;
}

template <Amplitude T>
int DeviceGraph<T>::add_mirror(MirrorUnit<T> mirror) {
  mirrors_.push_back(std::move(mirror));
  return static_cast<int>(mirrors_.size()) - 1;
}

template <Amplitude T>
int DeviceGraph<T>::append(const DeviceGraph& other, int group, const std::string& lead_prefix) {
  const int node_off = static_cast<int>(nodes_.size());
  const int mode_off = static_cast<int>(modes_.size());
  const int mirror_off = static_cast<int>(mirrors_.size());
  const int lead_off = static_cast<int>(leads_.size());
  for (DirectedMode m : other.modes_) {
    if (m.kind == ModeKind::FromMirror) {
      m.from_node += mirror_off;
      m.to_node += node_off;
    } else if (m.kind == ModeKind::ToMirror) {
      m.from_node += node_off;
      m.to_node += mirror_off;
    } else {
      m.from_node += node_off;
      m.to_node += node_off;
    }
    modes_.push_back(m);
  }
  for (ScatterNode<T> n : other.nodes_) {
    n.group = group;
    for (Arm& a : n.arms) {
      if (a.in_mode >= 0) a.in_mode += mode_off;
      if (a.out_mode >= 0) a.out_mode += mode_off;
      if (a.lead >= 0) a.lead += lead_off;
    }
    nodes_.push_back(std::move(n));
  }
  for (MirrorUnit<T> m : other.mirrors_) {
    m.node += node_off;
    m.to_mode += mode_off;
    m.from_mode += mode_off;
    mirrors_.push_back(std::move(m));
  }
  for (Transit<T> t : other.transits_) {
    t.from_mode += mode_off;
    t.to_mode += mode_off;
    if (t.mirror >= 0) t.mirror += mirror_off;
    transits_.push_back(std::move(t));
  }
  for (Lead l : other.leads_) {
    l.name = lead_prefix + l.name;
    l.node += node_off;
    leads_.push_back(std::move(l));
  }
  return node_off;
}

template <Amplitude T>
void DeviceGraph<T>::connect(int lead_a, int lead_b, const T& factor) {
  if (lead_a == lead_b) throw SpecError("cannot connect a lead to itself");
  const Lead a = leads_.at(lead_a);
  const Lead b = leads_.at(lead_b);
  const int ab = add_mode(DirectedMode{ModeKind::Link, a.node, b.node});
  const int ba = add_mode(DirectedMode{ModeKind::Link, b.node, a.node});
  Arm& arm_a = nodes_[a.node].arms[a.arm];
  Arm& arm_b = nodes_[b.node].arms[b.arm];
  arm_a = Arm{ba, ab, -1};
  arm_b = Arm{ab, ba, -1};
  transits_.push_back(Transit<T>{ab, ab, factor, -1});
  transits_.push_back(Transit<T>{ba, ba, factor, -1});
  drop_leads({lead_a, lead_b});
}

template <Amplitude T>
void DeviceGraph<T>::drop_leads(std::vector<int> doomed) {
  std::sort(doomed.begin(), doomed.end());
  std::vector<int> remap(leads_.size(), -1);
  std::vector<Lead> kept;
  for (size_t k = 0; k < leads_.size(); ++k) {
    if (std::binary_search(doomed.begin(), doomed.end(), static_cast<int>(k))) continue;
    remap[k] = static_cast<int>(kept.size());
    kept.push_back(leads_[k]);
  }
  for (auto& n : nodes_)
    for (auto& a : n.arms)
      if (a.lead >= 0) a.lead = remap[a.lead];
  leads_ = std::move(kept);
}

template <Amplitude T>
void DeviceGraph<T>::check_unitary(double tol) const {
  for (const auto& n : nodes_) {
    const auto m = n.scatter.to_complex();
    if (!is_unitary(m, tol)) throw SpecError("scattering matrix of node " + n.name + " is not unitary");
  }
  for (const auto& t : transits_) {
    if (std::abs(std::abs(ScalarOps<T>::to_complex(t.factor)) - 1.0) > tol)
      throw SpecError("propagation factor must have unit modulus");
  }
}

template <Amplitude T>
Evolution<T>::Evolution(const DeviceGraph<T>& graph)
    : graph_(&graph), modes_(graph.modes().size(), ScalarOps<T>::zero()) {}

template <Amplitude T>
void Evolution<T>::scatter_node(int k, const std::vector<T>& arriving, const SquareMatrix<T>& scatter,
                                int injected_arm, const T& injected_amp, std::vector<T>& departing,
                                std::vector<T>& exits) const {
  const auto& node = graph_->nodes()[k];
  const int arms = static_cast<int>(node.arms.size());
  for (int in = 0; in < arms; ++in) {
    const Arm& arm_in = node.arms[in];
    const T* amp = nullptr;
    if (in == injected_arm) amp = &injected_amp;
    else if (arm_in.in_mode >= 0) amp = &arriving[arm_in.in_mode];
    if (amp == nullptr || ScalarOps<T>::is_zero(*amp)) continue;
    for (int out = 0; out < arms; ++out) {
      const T& s = scatter(out, in);
      if (ScalarOps<T>::is_zero(s)) continue;
      const Arm& arm_out = node.arms[out];
      if (arm_out.out_mode >= 0) departing[arm_out.out_mode] += s * *amp;
      else if (arm_out.lead >= 0) exits[arm_out.lead] += s * *amp;
    }
  }
}

template <Amplitude T>
std::vector<T> Evolution<T>::inject(int lead, const T& amp, const StepOverrides<T>* overrides) {
  const Lead& l = graph_->leads().at(lead);
  std::vector<T> exits(graph_->leads().size(), ScalarOps<T>::zero());
  const std::vector<T> none(modes_.size(), ScalarOps<T>::zero());
  const SquareMatrix<T>* scatter = &graph_->nodes()[l.node].scatter;
  if (overrides != nullptr) {
    auto it = overrides->node_scatter.find(l.node);
    if (it != overrides->node_scatter.end()) scatter = &it->second;
  }
  scatter_node(l.node, none, *scatter, l.arm, amp, modes_, exits);
  return exits;
}

template <Amplitude T>
std::vector<T> Evolution<T>::step(const StepOverrides<T>* overrides) {
  std::vector<T> arriving(modes_.size(), ScalarOps<T>::zero());
  for (const auto& tr : graph_->transits()) {
    const T& amp = modes_[tr.from_mode];
    if (ScalarOps<T>::is_zero(amp)) continue;
    const T* factor = &tr.factor;
    if (overrides != nullptr && tr.mirror >= 0) {
      auto it = overrides->mirror_factor.find(tr.mirror);
      if (it != overrides->mirror_factor.end()) factor = &it->second;
    }
    arriving[tr.to_mode] += *factor * amp;
  }
  std::vector<T> departing(modes_.size(), ScalarOps<T>::zero());
  std::vector<T> exits(graph_->leads().size(), ScalarOps<T>::zero());
  const T none = ScalarOps<T>::zero();
  for (int k = 0; k < static_cast<int>(graph_->nodes().size()); ++k) {
    const SquareMatrix<T>* scatter = &graph_->nodes()[k].scatter;
    if (overrides != nullptr) {
      auto it = overrides->node_scatter.find(k);
      if (it != overrides->node_scatter.end()) scatter = &it->second;
    }
    scatter_node(k, arriving, *scatter, -1, none, departing, exits);
  }
  if constexpr (!ScalarOps<T>::kExact) {
    for (auto& a : departing)
      if (ScalarOps<T>::negligible(a)) a = ScalarOps<T>::zero();
  }
  modes_ = std::move(departing);
  ++steps_;
  return exits;
}

template <Amplitude T>
RealOf<T> Evolution<T>::internal_norm2() const {
  RealOf<T> acc{};
  for (const auto& a : modes_) acc += ScalarOps<T>::norm(a);
  return acc;
}

template <Amplitude T>
ScatterNode<T> corner_node(const VertexParams& p) {
  enum { kExt = 0, kMirror = 1, kEdgeE = 2, kEdgeS = 3 };
  const T r = ScalarOps<T>::from_complex(p.r);
  const T t = ScalarOps<T>::from_complex(p.t);
  ScatterNode<T> node;
  node.scatter = SquareMatrix<T>(4);
  node.symbols.assign(16, '.');
  auto set = [&](int out, int in, const T& v, char sym) {
    node.scatter(out, in) = v;
    node.symbols[out * 4 + in] = sym;
  };
  set(kEdgeE, kExt, t, 't');
  set(kEdgeS, kExt, r, 'r');
  set(kEdgeS, kMirror, t, 't');
  set(kEdgeE, kMirror, r, 'r');
  set(kExt, kEdgeE, t, 't');
  set(kMirror, kEdgeE, r, 'r');
  set(kMirror, kEdgeS, t, 't');
  set(kExt, kEdgeS, r, 'r');
  return node;
}

template <Amplitude T>
DeviceGraph<T> compile(const MultiportSpec& spec) {
  spec.validate();
  const int n = spec.ports;
  DeviceGraph<T> g;
  // Mode layout: cw(k) = corner k -> k+1, ccw(k) = corner k+1 -> k.
  std::vector<int> cw(n), ccw(n), to_mirror(n), from_mirror(n);
  for (int k = 0; k < n; ++k) {
    cw[k] = g.add_mode(DirectedMode{ModeKind::Edge, k, (k + 1) % n});
    ccw[k] = g.add_mode(DirectedMode{ModeKind::Edge, (k + 1) % n, k});
  }
  for (int k = 0; k < n; ++k) {
    to_mirror[k] = g.add_mode(DirectedMode{ModeKind::ToMirror, k, k});
    from_mirror[k] = g.add_mode(DirectedMode{ModeKind::FromMirror, k, k});
  }
  enum { kMirror = 1, kEdgeE = 2, kEdgeS = 3 };
  for (int k = 0; k < n; ++k) {
    ScatterNode<T> node = corner_node<T>(spec.vertices[k]);
    node.name = port_label(k);
    node.arms.resize(4);
    node.arms[kMirror] = Arm{from_mirror[k], to_mirror[k], -1};
    node.arms[kEdgeE] = Arm{ccw[k], cw[k], -1};
    const int prev = (k + n - 1) % n;
    node.arms[kEdgeS] = Arm{cw[prev], ccw[prev], -1};
    std::vector<std::string> lead_names{port_label(k)};
    g.add_node(std::move(node), lead_names);
  }
  for (int k = 0; k < n; ++k) {
    const T phase = ScalarOps<T>::from_complex(std::polar(1.0, spec.edge_phases[k]));
    g.add_transit(Transit<T>{cw[k], cw[k], phase, -1});
    g.add_transit(Transit<T>{ccw[k], ccw[k], phase, -1});
  }
  for (int k = 0; k < n; ++k) {
    const T m = ScalarOps<T>::from_complex(spec.vertices[k].mirror);
    const int id = g.add_mirror(MirrorUnit<T>{k, m, to_mirror[k], from_mirror[k]});
    g.add_transit(Transit<T>{to_mirror[k], from_mirror[k], m, id});
  }
  return g;
}

template <Amplitude T>
TransferOperator<T> transfer_operator(const DeviceGraph<T>& graph) {
  const size_t modes = graph.modes().size();
  const size_t leads = graph.leads().size();
  const T zero = ScalarOps<T>::zero();
  TransferOperator<T> op;
  op.internal.assign(modes, std::vector<T>(modes, zero));
  op.exit.assign(leads, std::vector<T>(modes, zero));
  op.inject.assign(leads, std::vector<T>(modes, zero));
  op.direct.assign(leads, std::vector<T>(leads, zero));
  // Which (node, arm) does each mode arrive at?
  std::vector<std::pair<int, int>> arrival(modes, {-1, -1});
  for (size_t k = 0; k < graph.nodes().size(); ++k)
    for (size_t a = 0; a < graph.nodes()[k].arms.size(); ++a) {
      const int in = graph.nodes()[k].arms[a].in_mode;
      if (in >= 0) arrival[in] = {static_cast<int>(k), static_cast<int>(a)};
    }
  auto spread = [&](int node, int in_arm, const T& amp, std::vector<T>& internal_col, std::vector<T>& exit_row_major,
                    bool exit_by_lead_first, int from) {
    const auto& n = graph.nodes()[node];
    for (size_t out = 0; out < n.arms.size(); ++out) {
      const T v = n.scatter(static_cast<int>(out), in_arm) * amp;
      if (ScalarOps<T>::is_zero(v)) continue;
      const Arm& arm = n.arms[out];
      if (arm.out_mode >= 0) internal_col[arm.out_mode] += v;
      else if (arm.lead >= 0) {
        if (exit_by_lead_first) op.exit[arm.lead][from] += v;
        else exit_row_major[arm.lead] += v;
      }
    }
  };
  for (const auto& tr : graph.transits()) {
    const auto [node, arm] = arrival[tr.to_mode];
    if (node < 0) continue;
    std::vector<T> col(modes, zero);
    std::vector<T> unused;
    spread(node, arm, tr.factor, col, unused, true, tr.from_mode);
    for (size_t to = 0; to < modes; ++to) op.internal[to][tr.from_mode] += col[to];
  }
  for (size_t l = 0; l < leads; ++l) {
    const Lead& lead = graph.leads()[l];
    spread(lead.node, lead.arm, ScalarOps<T>::one(), op.inject[l], op.direct[l], false, -1);
  }
  return op;
}

template class DeviceGraph<Complex>;
template class DeviceGraph<ExactComplex>;
template class Evolution<Complex>;
template class Evolution<ExactComplex>;
template ScatterNode<Complex> corner_node<Complex>(const VertexParams&);
template ScatterNode<ExactComplex> corner_node<ExactComplex>(const VertexParams&);
template DeviceGraph<Complex> compile<Complex>(const MultiportSpec&);
template DeviceGraph<ExactComplex> compile<ExactComplex>(const MultiportSpec&);
template TransferOperator<Complex> transfer_operator(const DeviceGraph<Complex>&);
template TransferOperator<ExactComplex> transfer_operator(const DeviceGraph<ExactComplex>&);

}  // namespace multiport
