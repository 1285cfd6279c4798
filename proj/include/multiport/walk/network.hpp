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
#pragma once

// Scattering quantum walks on undirected graphs of multiport vertices.
//
// A vertex is either an ideal coin (a k x k unitary acting on its k ports in
// one step) or a physical multiport expanded into its beam-splitter polygon.
// Inter-vertex edges carry one step of propagation. Leads are absorbing.
// Step 1 is the scattering of the injected photon.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multiport/device/graph.hpp"
#include "multiport/feasibility/timing.hpp"

namespace multiport {

enum class VertexKind { IdealCoin, Physical };

struct WalkVertex {
  std::string name;
  VertexKind kind = VertexKind::IdealCoin;
  int degree = 3;
  std::optional<UnitaryMatrix> coin;  // ideal vertices; Grover coin when absent
  MultiportSpec device;               // physical vertices; device.ports == degree
};

struct PortRef {
  int vertex = 0;
  int port = 0;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct WalkEdge {
  PortRef a;
  PortRef b;
  double phase = 0.0;  // propagation phase, radians
};

struct WalkLead {
  std::string name;
  PortRef at;
};

struct GraphSpec {
  std::vector<WalkVertex> vertices;
  std::vector<WalkEdge> edges;
  std::vector<WalkLead> leads;
  bool allow_disconnected = false;

  /// Every vertex port is used by exactly one edge or lead, coins match
  /// their degree and are unitary, and the graph is connected unless
  /// allow_disconnected. Throws SpecError.
  void validate() const;
  int find_lead(const std::string& name) const;

  /// One vertex whose ports are all leads named A, B, C, ...
  static GraphSpec single_vertex(const WalkVertex& v);
};

/// Replacement parameters for one vertex at one step.
struct VertexOverride {
  std::optional<UnitaryMatrix> coin;   // ideal vertices
  std::vector<VertexParams> corners;  // physical vertices: one entry for all corners, or one per corner
};

/// Step index (1-based scattering event) -> vertex -> override.
struct Schedule {
  std::map<int, std::map<int, VertexOverride>> steps;
  void set(int step, int vertex, VertexOverride o) { steps[step][vertex] = std::move(o); }
  bool empty() const { return steps.empty(); }
};

template <Amplitude T>
class WalkEngine {
 public:
  WalkEngine(GraphSpec spec, DeviceGraph<T> graph, std::vector<int> lead_index,
             std::vector<std::pair<int, int>> edge_modes, std::vector<std::vector<int>> vertex_nodes,
             std::vector<std::vector<int>> vertex_mirrors);

  const GraphSpec& spec() const { return spec_; }
  const DeviceGraph<T>& graph() const { return graph_; }
  /// Graph lead index of spec lead k.
  int graph_lead(int k) const { return lead_index_.at(k); }
  /// Directed link modes (a -> b, b -> a) of spec edge k.
  const std::pair<int, int>& edge_modes(int k) const { return edge_modes_.at(k); }
  const std::vector<int>& vertex_nodes(int v) const { return vertex_nodes_.at(v); }

  /// Translates one step of a schedule; throws SpecError if an override
  /// is not unitary or does not fit its vertex.
  StepOverrides<T> overrides(int step, const std::map<int, VertexOverride>& by_vertex) const;

 private:
  GraphSpec spec_;
  DeviceGraph<T> graph_;
  std::vector<int> lead_index_;
  std::vector<std::pair<int, int>> edge_modes_;
  std::vector<std::vector<int>> vertex_nodes_;
  std::vector<std::vector<int>> vertex_mirrors_;
};

template <Amplitude T>
WalkEngine<T> build_network(const GraphSpec& g);

template <Amplitude T>
struct WalkFrame {
  int step = 0;
  std::vector<T> exit_amplitudes;         // per spec lead, this step
  std::vector<RealOf<T>> exit_probability;  // per spec lead, this step
  std::vector<RealOf<T>> cumulative_exit;   // per spec lead
  std::vector<RealOf<T>> edge_probability;  // per spec edge, both directions
  std::vector<RealOf<T>> vertex_probability;  // inside each physical vertex
  RealOf<T> internal{};
  RealOf<T> total{};  // internal + all cumulative exits
};

template <Amplitude T>
struct WalkSeries {
  int input = 0;
  std::vector<WalkFrame<T>> frames;
};

/// Runs steps scattering events from a photon entering spec lead input.
/// Throws InvariantError if probability is not conserved (exactly in exact
/// mode, to 1e-9 otherwise).
template <Amplitude T>
WalkSeries<T> run_walk(const WalkEngine<T>& engine, int input, int steps, const Schedule* schedule = nullptr);

struct WalkCoherence {
  CoherenceBudget budget;
  TimingBudget timing;
};

/// Largest number of device traversals that stay mutually coherent.
WalkCoherence coherence_budget(const TimingInputs& in);

extern template class WalkEngine<Complex>;
extern template class WalkEngine<ExactComplex>;

}  // namespace multiport
