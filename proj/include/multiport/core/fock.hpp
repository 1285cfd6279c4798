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

// Bosonic multi-photon states over (port, polarisation) modes in the
// normalised occupation-number basis.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "multiport/core/matrix.hpp"
#include "multiport/core/scalar.hpp"

namespace multiport {

enum class Polarization : std::uint8_t { H = 0, V = 1 };

inline constexpr int kDefaultMaxPhotons = 4;

struct Mode {
  int port = 0;
  Polarization pol = Polarization::H;
  /// Canonical index: port-major, H before V.
  int index() const { return 2 * port + static_cast<int>(pol); }
};

/// Photon counts per mode in canonical order. Ordering of Occupation values
/// is lexicographic on that order, which fixes map iteration order.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(int ports) : counts_(static_cast<size_t>(2 * ports), 0) {}

  int ports() const { return static_cast<int>(counts_.size() / 2); }
  int count(Mode m) const { return counts_[m.index()]; }
  int count(int port, Polarization pol) const { return count(Mode{port, pol}); }
  int at_port(int port) const { return counts_[2 * port] + counts_[2 * port + 1]; }
  int total() const;
  void add(Mode m, int delta = 1);
  const std::vector<std::uint8_t>& counts() const { return counts_; }
  /// Same occupation with the given port emptied.
  Occupation without_port(int port) const;
  /// Ket label such as "|H>_A|V>_B" or "|2H>_A".
  std::string str() const;

  friend auto operator<=>(const Occupation&, const Occupation&) = default;

 private:
  std::vector<std::uint8_t> counts_;
};

template <Amplitude T>
class FockState {
 public:
  using Terms = std::map<Occupation, T>;

  FockState() = default;
  explicit FockState(int ports) : ports_(ports) {}

  /// Single photon in mode m with unit amplitude.
  static FockState photon(int ports, Mode m);
  /// Product of one photon per listed mode, as a normalised-basis expansion.
  static FockState from_modes(int ports, const std::vector<Mode>& modes);

  int ports() const { return ports_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Photon number shared by every term, 0 for the empty state.
  int photon_number() const;
  T amplitude(const Occupation& occ) const;

  /// Adds amp to the coefficient of occ; enforces equal photon number.
  void add(const Occupation& occ, const T& amp);
  /// Drops terms below the floating pruning threshold (no-op in exact mode).
  void prune();

  RealOf<T> norm2() const;
  FockState scaled(const T& s) const;

  friend FockState operator+(FockState a, const FockState& b) {
    for (const auto& [occ, amp] : b.terms_) a.add(occ, amp);
    a.prune();
    return a;
  }
  friend FockState operator-(FockState a, const FockState& b) {
    for (const auto& [occ, amp] : b.terms_) a.add(occ, -amp);
    a.prune();
    return a;
  }

 private:
  int ports_ = 0;
  Terms terms_;
};

/// <a|b>
template <Amplitude T>
T inner_product(const FockState<T>& a, const FockState<T>& b);

/// Creation-operator product of two states, re-expanded in the normalised
/// number basis (a^dagger^2 |0> = sqrt2 |2>). Throws CapacityError past max_photons.
template <Amplitude T>
FockState<T> bosonic_product(const FockState<T>& s1, const FockState<T>& s2, int max_photons = kDefaultMaxPhotons);

/// Applies the single-photon port map U to every photon: a^dagger_{p,pol} ->
/// sum_q U(q,p) a^dagger_{q,pol}. Polarisation is untouched.
template <Amplitude T>
FockState<T> apply_port_unitary(const SquareMatrix<T>& u, const FockState<T>& s);

using OccupationPredicate = std::function<bool(const Occupation&)>;

/// Component of s whose occupations satisfy pred, not renormalised.
template <Amplitude T>
FockState<T> project(const FockState<T>& s, const OccupationPredicate& pred);

/// Partial inner product with a state living on a single port: returns
/// sum_k conj(c_k) <k|_port s, a state with that port empty. Each
/// local_ket entry is (H count, V count, coefficient c_k).
template <Amplitude T>
FockState<T> contract_port(const FockState<T>& s, int port,
                           const std::vector<std::pair<std::pair<int, int>, T>>& local_ket);

using RealFockState = FockState<Complex>;
using ExactFockState = FockState<ExactComplex>;

template <class T>
FockState<Complex> to_complex(const FockState<T>& s) {
  FockState<Complex> out(s.ports());
  for (const auto& [occ, amp] : s.terms()) out.add(occ, ScalarOps<T>::to_complex(amp));
  out.prune();
  return out;
}

extern template class FockState<Complex>;
extern template class FockState<ExactComplex>;

}  // namespace multiport
