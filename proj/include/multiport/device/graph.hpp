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

// Directed-mode scattering graphs and their step evolution.
//
// A graph is a set of scattering nodes (beam splitters or ideal coins). Each
// node arm carries an incoming and an outgoing directed mode, or else an
// external lead. One evolution step moves every departing amplitude along its
// segment (edge phase, or a full mirror round trip) and then scatters it at
// the node it reaches. Amplitude scattered into a lead is an exit and never
// returns.

#include <map>
#include <string>
#include <vector>

#include "multiport/core/matrix.hpp"
#include "multiport/device/spec.hpp"

namespace multiport {

enum class ModeKind { Edge, ToMirror, FromMirror, Link };

struct DirectedMode {
  ModeKind kind = ModeKind::Edge;
  int from_node = -1;  // scattering node, or mirror index for FromMirror
  int to_node = -1;    // scattering node, or mirror index for ToMirror
};

struct Arm {
  int in_mode = -1;
  int out_mode = -1;
  int lead = -1;  // >= 0 for external arms, which have no modes
};

template <Amplitude T>
struct ScatterNode {
  std::string name;
  int group = 0;  // owning network vertex
  std::vector<Arm> arms;
  SquareMatrix<T> scatter;    // scatter(out_arm, in_arm)
  std::vector<char> symbols;  // per (out, in): 't', 'r' for beam splitters, 'c' for coins
  char symbol(int out_arm, int in_arm) const { return symbols[out_arm * arms.size() + in_arm]; }
};

template <Amplitude T>
struct MirrorUnit {
  int node = -1;
  T factor;
  int to_mode = -1;
  int from_mode = -1;
};

template <Amplitude T>
struct Transit {
  int from_mode = -1;
  int to_mode = -1;
  T factor;
  int mirror = -1;  // index into mirrors() for round trips
};

struct Lead {
  std::string name;
  int node = -1;
  int arm = -1;
};

template <Amplitude T>
class DeviceGraph {
 public:
  const std::vector<ScatterNode<T>>& nodes() const { return nodes_; }
  const std::vector<MirrorUnit<T>>& mirrors() const { return mirrors_; }
  const std::vector<DirectedMode>& modes() const { return modes_; }
  const std::vector<Transit<T>>& transits() const { return transits_; }
  const std::vector<Lead>& leads() const { return leads_; }

  int count_modes(ModeKind kind) const;
  int find_lead(const std::string& name) const;

  /// Adds a node whose arms are all external leads with the given names.
  int add_node(ScatterNode<T> node, const std::vector<std::string>& lead_names);
  int add_mode(DirectedMode mode);
  void add_transit(Transit<T> transit) { transits_.push_back(std::move(transit)); }
  int add_mirror(MirrorUnit<T> mirror);
  ScatterNode<T>& node(int k) { return nodes_.at(k); }

  /// Copies another graph in; lead names are prefixed. Returns the node offset.
  int append(const DeviceGraph& other, int group, const std::string& lead_prefix);

  /// Replaces two external leads by a pair of directed link modes carrying
  /// the given propagation factor in both directions.
  void connect(int lead_a, int lead_b, const T& factor);

  /// Per-node scatter matrices unitary and transit factors unimodular.
  void check_unitary(double tol = 1e-9) const;

 private:
  void drop_leads(std::vector<int> doomed);

  std::vector<ScatterNode<T>> nodes_;
  std::vector<MirrorUnit<T>> mirrors_;
  std::vector<DirectedMode> modes_;
  std::vector<Transit<T>> transits_;
  std::vector<Lead> leads_;
};

/// Per-step replacements for node scatter matrices and mirror factors.
template <Amplitude T>
struct StepOverrides {
  std::map<int, SquareMatrix<T>> node_scatter;
  std::map<int, T> mirror_factor;
  bool empty() const { return node_scatter.empty() && mirror_factor.empty(); }
};

/// Mutable single-run evolution over a graph. One instance per run.
template <Amplitude T>
class Evolution {
 public:
  explicit Evolution(const DeviceGraph<T>& graph);

  /// Sends amp in through a lead; it scatters at once (first node
  /// encounter). Returns the amplitude leaving through each lead.
  std::vector<T> inject(int lead, const T& amp, const StepOverrides<T>* overrides = nullptr);
  /// One segment traversal and the following node encounter.
  std::vector<T> step(const StepOverrides<T>* overrides = nullptr);

  /// Amplitudes on internal directed modes, as they depart their nodes.
  const std::vector<T>& modes() const { return modes_; }
  RealOf<T> internal_norm2() const;
  int steps_taken() const { return steps_; }

 private:
  void scatter_node(int k, const std::vector<T>& arriving, const SquareMatrix<T>& scatter, int injected_arm,
                    const T& injected_amp, std::vector<T>& departing, std::vector<T>& exits) const;

  const DeviceGraph<T>* graph_;
  std::vector<T> modes_;
  int steps_ = 0;
};

/// Beam-splitter corner with arms [external, mirror, edge-E, edge-S] and
/// its scatter matrix; arms carry no modes yet.
template <Amplitude T>
ScatterNode<T> corner_node(const VertexParams& p);

/// Compiles an n-port polygon: corner k is beam splitter node k with arms
/// [external, mirror, edge-E, edge-S]; external-edge-E and mirror-edge-S
/// transmit (t), external-edge-S and mirror-edge-E reflect (r). Edge-E of
/// corner k feeds edge-S of corner k+1. Lead k is port k.
template <Amplitude T>
DeviceGraph<T> compile(const MultiportSpec& spec);

/// Dense one-step transfer on internal modes (W), with X mapping internal
/// modes to per-lead exits and the injection columns for each lead. Used by
/// the resolvent summation and by oracles.
template <Amplitude T>
struct TransferOperator {
  std::vector<std::vector<T>> internal;   // internal[to][from]
  std::vector<std::vector<T>> exit;       // exit[lead][from]
  std::vector<std::vector<T>> inject;     // inject[lead] -> internal mode amplitudes
  std::vector<std::vector<T>> direct;     // direct[lead_in][lead_out] exit at injection
};

template <Amplitude T>
TransferOperator<T> transfer_operator(const DeviceGraph<T>& graph);

extern template class DeviceGraph<Complex>;
extern template class DeviceGraph<ExactComplex>;
extern template class Evolution<Complex>;
extern template class Evolution<ExactComplex>;

}  // namespace multiport
