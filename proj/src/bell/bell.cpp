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
#include "multiport/bell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "multiport/core/ports.hpp"

namespace multiport {
namespace {

int index_of(const BellLabel& l) { return (l.family == BellFamily::Phi ? 2 : 0) + (l.sign == BellSign::Minus ? 1 : 0); }

BellLabel label_at(int index, int p, int q) {
  return BellLabel{index >= 2 ? BellFamily::Phi : BellFamily::Psi, index % 2 ? BellSign::Minus : BellSign::Plus, p, q};
}

// The two ports that are neither the herald nor out of range.
std::pair<int, int> output_pair(int ports, int herald) {
  std::vector<int> rest;
  for (int p = 0; p < ports; ++p)
    if (p != herald) rest.push_back(p);
  if (rest.size() != 2) throw DimensionError("Bell processing needs a three-port device");
  return {rest[0], rest[1]};
}

template <Amplitude T>
FockState<T> normalised(const FockState<T>& s) {
  const RealOf<T> n2 = s.norm2();
  if constexpr (ScalarOps<T>::kExact) {
    return s.scaled(ScalarOps<T>::from_real_part(ScalarOps<T>::real_sqrt(n2).inverse()));
  } else {
    return s.scaled(Complex(1.0 / std::sqrt(n2), 0.0));
  }
}

// Two photons at the herald port and exactly one at each output port.
OccupationPredicate accepted(int herald, int p, int q) {
  return [=](const Occupation& o) { return o.at_port(herald) == 2 && o.at_port(p) == 1 && o.at_port(q) == 1; };
}

}  // namespace

std::string BellLabel::symbol() const {
  return std::string(family == BellFamily::Psi ? "Psi" : "Phi") + (sign == BellSign::Plus ? "+" : "-");
}

std::string BellLabel::str() const { return symbol() + "_" + port_label(first) + port_label(second); }

std::array<BellLabel, 4> bell_labels(int p, int q) {
  return {label_at(0, p, q), label_at(1, p, q), label_at(2, p, q), label_at(3, p, q)};
}

BellLabel parse_bell_symbol(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto ends_with = [&](const std::string& suffix) {
    return t.size() >= suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  BellLabel out;
  if (ends_with("+")) out.sign = BellSign::Plus;
  else if (ends_with("-")) out.sign = BellSign::Minus;
  else throw ConfigError("Bell label '" + text + "' lacks a sign");
  const std::string head = t.substr(0, t.size() - 1);
  if (head == "psi" || head == "\xcf\x88" || head == "\xce\xa8") out.family = BellFamily::Psi;
  else if (head == "phi" || head == "\xcf\x86" || head == "\xce\xa6") out.family = BellFamily::Phi;
  else throw ConfigError("unknown Bell family in '" + text + "'");
  return out;
}

BellLabel swap_family(BellLabel label) {
  label.family = label.family == BellFamily::Psi ? BellFamily::Phi : BellFamily::Psi;
  return label;
}

template <Amplitude T>
FockState<T> bell_state(const BellLabel& label, int ports) {
  if (label.first == label.second) throw SpecError("Bell pair ports must differ");
  if (label.first < 0 || label.second < 0 || label.first >= ports || label.second >= ports)
    throw DimensionError("Bell pair outside the device");
  const auto H = Polarization::H;
  const auto V = Polarization::V;
  const int p = label.first;
  const int q = label.second;
  const bool psi = label.family == BellFamily::Psi;
  const T amp = ScalarOps<T>::fraction(1, 2) * ScalarOps<T>::sqrt_of(2);
  const T second = label.sign == BellSign::Plus ? amp : -amp;
  FockState<T> out = FockState<T>::from_modes(ports, {Mode{p, H}, Mode{q, psi ? V : H}}).scaled(amp);
  out = out + FockState<T>::from_modes(ports, {Mode{p, V}, Mode{q, psi ? H : V}}).scaled(second);
  return out;
}

BellClassification classify_bell(const FockState<Complex>& s, int p, int q, double tol) {
  BellClassification out;
  const auto labels = bell_labels(p, q);
  for (int k = 0; k < 4; ++k) {
    const Complex overlap = inner_product(bell_state<Complex>(labels[k], s.ports()), s);
    out.overlaps[k] = std::abs(overlap);
    if (std::abs(overlap) > 1.0 - tol) {
      out.label = labels[k];
      out.phase = overlap / std::abs(overlap);
    }
  }
  return out;
}

template <Amplitude T>
FockState<T> intermediate_expansion(const BellLabel& input, const SquareMatrix<T>& u) {
  return apply_port_unitary(u, bell_state<T>(input, u.dim()));
}

template <Amplitude T>
FockState<T> four_photon_output(const BellLabel& input, const BellLabel& control, const SquareMatrix<T>& u) {
  // (U (x) U) is unitary on Fock space, so normalising after the device is
  // the same as normalising the bosonic input product.
  const FockState<T> product =
      bosonic_product(intermediate_expansion(input, u), intermediate_expansion(control, u), kDefaultMaxPhotons);
  return normalised(product);
}

template <Amplitude T>
GateOutcome<T> process(const BellLabel& input, const BellLabel& control, const HeraldCondition& condition,
                       const SquareMatrix<T>& u) {
  const int herald = condition.port;
  const auto [p, q] = output_pair(u.dim(), herald);
  const FockState<T> out = four_photon_output(input, control, u);
  const FockState<T> kept = project(out, accepted(herald, p, q));

  GateOutcome<T> outcome;
  FockState<T> branch;
  if (condition.kind == Herald::Opposite) {
    branch = project(kept, [herald](const Occupation& o) { return o.count(herald, Polarization::H) == 1; });
    outcome.output_state = contract_port(branch, herald, {{{1, 1}, ScalarOps<T>::one()}});
  } else {
    branch = project(kept, [herald](const Occupation& o) { return o.count(herald, Polarization::H) != 1; });
    const T c = ScalarOps<T>::fraction(1, 2) * ScalarOps<T>::sqrt_of(2);
    outcome.output_state = contract_port(branch, herald, {{{2, 0}, c}, {{0, 2}, c}});
  }
  outcome.probability = branch.norm2();
  outcome.functional_probability = outcome.output_state.norm2();
  if (outcome.output_state.empty()) return outcome;

  const FockState<Complex> as_complex = to_complex(outcome.output_state);
  const double n = std::sqrt(as_complex.norm2());
  const BellClassification cls = classify_bell(as_complex.scaled(Complex(1.0 / n, 0.0)), p, q);
  outcome.output = cls.label;
  outcome.phase = cls.phase;
  outcome.overlaps = cls.overlaps;
  return outcome;
}

template <Amplitude T>
HeraldSplit<T> herald_split(const BellLabel& input, const BellLabel& control, const SquareMatrix<T>& u,
                            int herald_port) {
  const auto [p, q] = output_pair(u.dim(), herald_port);
  const FockState<T> out = four_photon_output(input, control, u);
  const FockState<T> kept = project(out, accepted(herald_port, p, q));
  HeraldSplit<T> split;
  split.opposite = project(kept, [&](const Occupation& o) { return o.count(herald_port, Polarization::H) == 1; }).norm2();
  split.same = project(kept, [&](const Occupation& o) { return o.count(herald_port, Polarization::H) != 1; }).norm2();
  const auto pred = accepted(herald_port, p, q);
  split.rejected = project(out, [&](const Occupation& o) { return !pred(o); }).norm2();
  return split;
}

template <Amplitude T>
std::vector<TruthRow<T>> full_truth_table(const SquareMatrix<T>& u) {
  const auto inputs = bell_labels(0, 1);
  const auto controls = bell_labels(0, 2);
  std::vector<std::future<TruthRow<T>>> jobs;
  for (const auto& in : inputs) {
    for (const auto& ctl : controls) {
      jobs.push_back(std::async(std::launch::async, [&u, in, ctl] {
        const auto s = process(in, ctl, HeraldCondition{Herald::Same, 0}, u);
        const auto o = process(in, ctl, HeraldCondition{Herald::Opposite, 0}, u);
        if (!s.output || !o.output)
          throw InvariantError("gate output for " + in.symbol() + " x " + ctl.symbol() + " is not a Bell state");
        return TruthRow<T>{in, ctl, *s.output, *o.output, s.probability, o.probability, s.phase, o.phase};
      }));
    }
  }
  std::vector<TruthRow<T>> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

template <Amplitude T>
CnotTable cnot_table(const SquareMatrix<T>& u) {
  CnotTable table;
  table.is_cnot = true;
  const auto inputs = bell_labels(0, 1);
  const auto controls = bell_labels(0, 2);
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 2; ++c) {
      const auto outcome = process(inputs[i], controls[c], HeraldCondition{Herald::Same, 0}, u);
      CnotRow row;
      row.input = inputs[i];
      row.control = controls[c];
      row.target_bit = i;
      row.control_bit = c;
      if (outcome.output) {
        row.output = *outcome.output;
        row.output_bit = outcome.output->sign == BellSign::Minus ? 1 : 0;
        if (outcome.output->family != BellFamily::Phi || row.output_bit != (row.control_bit ^ row.target_bit))
          table.is_cnot = false;
      } else {
        table.is_cnot = false;
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

GroupReport check_group(const std::array<std::array<std::optional<int>, 4>, 4>& product) {
  GroupReport r;
  r.closure = true;
  for (const auto& row : product)
    for (const auto& v : row)
      if (!v || *v < 0 || *v >= 4) r.closure = false;
  if (!r.closure) {
    r.violations.push_back("closure");
    return r;
  }
  auto mul = [&](int a, int b) { return *product[a][b]; };
  r.commutative = true;
  r.associative = true;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (mul(a, b) != mul(b, a)) r.commutative = false;
      for (int c = 0; c < 4; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) r.associative = false;
    }
  std::vector<int> identities;
  for (int e = 0; e < 4; ++e) {
    bool is_id = true;
    for (int x = 0; x < 4; ++x)
      if (mul(e, x) != x || mul(x, e) != x) is_id = false;
    if (is_id) identities.push_back(e);
  }
  if (identities.size() == 1) r.identity = identities.front();
  r.self_inverse = r.identity.has_value();
  if (r.identity)
    for (int x = 0; x < 4; ++x)
      if (mul(x, x) != *r.identity) r.self_inverse = false;
  // Klein four-group: some bijection onto Z2 x Z2 (encoded as 2-bit XOR)
  // carries the table to XOR.
  std::array<int, 4> phi{0, 1, 2, 3};
  do {
    bool hom = true;
    for (int a = 0; a < 4 && hom; ++a)
      for (int b = 0; b < 4 && hom; ++b)
        if (phi[mul(a, b)] != (phi[a] ^ phi[b])) hom = false;
    if (hom) {
      r.klein = true;
      break;
    }
  } while (std::next_permutation(phi.begin(), phi.end()));
  if (!r.associative) r.violations.push_back("associativity");
  if (!r.commutative) r.violations.push_back("commutativity");
  if (!r.identity) r.violations.push_back("unique identity");
  if (!r.self_inverse) r.violations.push_back("self-inverse elements");
  if (!r.klein) r.violations.push_back("isomorphism to Z2+Z2");
  return r;
}

template <Amplitude T>
GroupTable group_table(const HeraldCondition& condition, const SquareMatrix<T>& u) {
  GroupTable table;
  const auto inputs = bell_labels(0, 1);
  const auto controls = bell_labels(0, 2);
  for (int k = 0; k < 4; ++k) table.elements[k] = label_at(k, 0, 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto outcome = process(inputs[a], controls[b], condition, u);
      if (outcome.output) table.product[a][b] = index_of(*outcome.output);
    }
  table.report = check_group(table.product);
  return table;
}

GroupTable swap_families(const GroupTable& table) {
  auto sw = [](int k) { return (k + 2) % 4; };
  GroupTable out;
  out.elements = table.elements;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto& v = table.product[sw(a)][sw(b)];
      if (v) out.product[a][b] = sw(*v);
    }
  out.report = check_group(out.product);
  return out;
}

#define MULTIPORT_INSTANTIATE_BELL(T)                                                                          \
  template FockState<T> bell_state<T>(const BellLabel&, int);                                                  \
  template FockState<T> intermediate_expansion<T>(const BellLabel&, const SquareMatrix<T>&);                   \
  template FockState<T> four_photon_output<T>(const BellLabel&, const BellLabel&, const SquareMatrix<T>&);     \
  template GateOutcome<T> process<T>(const BellLabel&, const BellLabel&, const HeraldCondition&,               \
                                     const SquareMatrix<T>&);                                                  \
  template HeraldSplit<T> herald_split<T>(const BellLabel&, const BellLabel&, const SquareMatrix<T>&, int);   \
  template std::vector<TruthRow<T>> full_truth_table<T>(const SquareMatrix<T>&);                               \
  template CnotTable cnot_table<T>(const SquareMatrix<T>&);                                                    \
  template GroupTable group_table<T>(const HeraldCondition&, const SquareMatrix<T>&);

MULTIPORT_INSTANTIATE_BELL(Complex)
MULTIPORT_INSTANTIATE_BELL(ExactComplex)

}  // namespace multiport
