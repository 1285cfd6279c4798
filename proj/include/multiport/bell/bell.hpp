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

// Bell-state processing on the three-port: two Bell pairs enter (input at
// AB, control at AC), both pass the device, and the BC output is accepted
// when two photons reach the herald port with the same (s) or opposite (o)
// polarisations.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "multiport/core/fock.hpp"

namespace multiport {

enum class BellFamily { Psi, Phi };
enum class BellSign { Plus, Minus };

struct BellLabel {
  BellFamily family = BellFamily::Psi;
  BellSign sign = BellSign::Plus;
  int first = 0;  // ordered port pair
  int second = 1;

  /// "Psi+", "Phi-", ...
  std::string symbol() const;
  /// "Psi+_AB"
  std::string str() const;
  BellLabel on(int p, int q) const { return BellLabel{family, sign, p, q}; }
  bool same_symmetry(const BellLabel& o) const { return family == o.family && sign == o.sign; }
  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

/// Psi+, Psi-, Phi+, Phi- on the given pair, in that order.
std::array<BellLabel, 4> bell_labels(int p, int q);
/// Parses "Psi+", "psi-", "Phi+", "phi-" (also the Greek letters).
BellLabel parse_bell_symbol(const std::string& text);
BellLabel swap_family(BellLabel label);

enum class Herald { Same, Opposite };

struct HeraldCondition {
  Herald kind = Herald::Same;
  int port = 0;
  char code() const { return kind == Herald::Same ? 's' : 'o'; }
};

/// Psi(+/-)_pq = (|H>_p|V>_q +/- |V>_p|H>_q)/sqrt2, Phi(+/-)_pq = (|H>_p|H>_q +/- |V>_p|V>_q)/sqrt2.
template <Amplitude T>
FockState<T> bell_state(const BellLabel& label, int ports = 3);

struct BellClassification {
  std::optional<BellLabel> label;
  Complex phase{1.0, 0.0};
  std::array<double, 4> overlaps{};  // |<Bell_k|s>| in bell_labels order
};

/// Identifies a normalised two-photon state on the pair as a Bell state up
/// to global phase (|overlap| > 1 - tol).
BellClassification classify_bell(const FockState<Complex>& s, int p, int q, double tol = 1e-9);

template <Amplitude T>
struct GateOutcome {
  std::optional<BellLabel> output;
  Complex phase{1.0, 0.0};
  RealOf<T> probability{};             // |heralded component|^2 before the herald functional
  RealOf<T> functional_probability{};  // |output state|^2 after it
  FockState<T> output_state;           // un-normalised state on the output pair
  std::array<double, 4> overlaps{};
};

/// The normalised four-photon state after the device, before heralding.
template <Amplitude T>
FockState<T> four_photon_output(const BellLabel& input, const BellLabel& control, const SquareMatrix<T>& u);

/// Runs input and control through u, heralds, and classifies the output.
/// Condition o keeps |H V>_herald; condition s applies the coherent
/// functional (<2H| + <2V|)/sqrt2 on the herald port.
template <Amplitude T>
GateOutcome<T> process(const BellLabel& input, const BellLabel& control, const HeraldCondition& condition,
                       const SquareMatrix<T>& u);

template <Amplitude T>
struct HeraldSplit {
  RealOf<T> same{};
  RealOf<T> opposite{};
  RealOf<T> rejected{};
};

/// Probabilities of the s branch, the o branch, and everything else.
template <Amplitude T>
HeraldSplit<T> herald_split(const BellLabel& input, const BellLabel& control, const SquareMatrix<T>& u,
                            int herald_port = 0);

/// (U (x) U) applied to a Bell state.
template <Amplitude T>
FockState<T> intermediate_expansion(const BellLabel& input, const SquareMatrix<T>& u);

template <Amplitude T>
struct TruthRow {
  BellLabel input;
  BellLabel control;
  BellLabel out_same;
  BellLabel out_opposite;
  RealOf<T> prob_same{};
  RealOf<T> prob_opposite{};
  Complex phase_same{1.0, 0.0};
  Complex phase_opposite{1.0, 0.0};
};

/// All 16 input x control rows (inputs at AB, controls at AC, output at BC,
/// herald at A). Throws InvariantError if an output is not a Bell state.
template <Amplitude T>
std::vector<TruthRow<T>> full_truth_table(const SquareMatrix<T>& u);

struct CnotRow {
  BellLabel input;
  BellLabel control;
  BellLabel output;
  int target_bit = 0;
  int control_bit = 0;
  int output_bit = 0;
};

struct CnotTable {
  std::vector<CnotRow> rows;
  /// Outputs are Phi states with bit = control XOR target.
  bool is_cnot = false;
};

/// Psi inputs and controls, s herald; "+" encodes 0 and "-" encodes 1.
template <Amplitude T>
CnotTable cnot_table(const SquareMatrix<T>& u);

struct GroupReport {
  bool closure = false;
  bool associative = false;
  bool commutative = false;
  std::optional<int> identity;  // index into elements
  bool self_inverse = false;
  bool klein = false;  // isomorphic to Z2 + Z2
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct GroupTable {
  std::array<BellLabel, 4> elements;  // Psi+, Psi-, Phi+, Phi-; ports stripped
  std::array<std::array<std::optional<int>, 4>, 4> product{};  // product[input][control]
  GroupReport report;
};

/// Multiplication table of Bell symmetries under one herald condition.
template <Amplitude T>
GroupTable group_table(const HeraldCondition& condition, const SquareMatrix<T>& u);

/// Axiom check of an arbitrary 4-element table.
GroupReport check_group(const std::array<std::array<std::optional<int>, 4>, 4>& product);

/// Exchanges Psi and Phi in elements and products.
GroupTable swap_families(const GroupTable& table);

}  // namespace multiport
