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
#include "multiport/core/fock.hpp"

#include <numeric>

#include "multiport/core/ports.hpp"

namespace multiport {
namespace {

long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

long long binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// sqrt(n!) and 1/sqrt(n!) in the active numeric policy.
template <class T>
T sqrt_factorial(int n) {
  return ScalarOps<T>::sqrt_of(factorial(n));
}

template <class T>
T inv_sqrt_factorial(int n) {
  const long long f = factorial(n);
  return ScalarOps<T>::fraction(1, f) * ScalarOps<T>::sqrt_of(f);
}

}  // namespace

int Occupation::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

void Occupation::add(Mode m, int delta) {
  const int next = counts_.at(m.index()) + delta;
  if (next < 0) throw InvariantError("negative photon count in " + port_label(m.port));
  counts_[m.index()] = static_cast<std::uint8_t>(next);
}

Occupation Occupation::without_port(int port) const {
  Occupation out = *this;
  out.counts_[2 * port] = 0;
  out.counts_[2 * port + 1] = 0;
  return out;
}

std::string Occupation::str() const {
  std::string out;
  for (int p = 0; p < ports(); ++p) {
    const int h = count(p, Polarization::H);
    const int v = count(p, Polarization::V);
    if (h + v == 0) continue;
    std::string inner;
    if (h == 1 && v == 1) {
      inner = "HV";
    } else {
      if (h > 0) inner += (h > 1 ? std::to_string(h) : "") + "H";
      if (v > 0) inner += (v > 1 ? std::to_string(v) : "") + "V";
    }
    out += "|" + inner + ">_" + port_label(p);
  }
  return out.empty() ? "|vac>" : out;
}

template <Amplitude T>
FockState<T> FockState<T>::photon(int ports, Mode m) {
  return from_modes(ports, {m});
}

template <Amplitude T>
FockState<T> FockState<T>::from_modes(int ports, const std::vector<Mode>& modes) {
  FockState out(ports);
  Occupation occ(ports);
  for (const Mode& m : modes) {
    if (m.port < 0 || m.port >= ports) throw DimensionError("mode port outside the device");
    occ.add(m);
  }
  // prod a^dagger |0> = prod sqrt(n_k!) |n>
  T amp = ScalarOps<T>::one();
  for (int k = 0; k < 2 * ports; ++k) amp = amp * sqrt_factorial<T>(occ.counts()[k]);
  out.add(occ, amp);
  return out;
}

template <Amplitude T>
int FockState<T>::photon_number() const {
  return terms_.empty() ? 0 : terms_.begin()->first.total();
}

template <Amplitude T>
T FockState<T>::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? ScalarOps<T>::zero() : it->second;
}

template <Amplitude T>
void FockState<T>::add(const Occupation& occ, const T& amp) {
  if (occ.ports() != ports_) throw DimensionError("occupation has the wrong number of ports");
  if (!terms_.empty() && occ.total() != photon_number())
    throw InvariantError("terms of one state must share a photon number");
  auto [it, inserted] = terms_.try_emplace(occ, amp);
  if (!inserted) it->second += amp;
  if (ScalarOps<T>::is_zero(it->second)) terms_.erase(it);
}

template <Amplitude T>
void FockState<T>::prune() {
  if constexpr (!ScalarOps<T>::kExact) {
    std::erase_if(terms_, [](const auto& kv) { return ScalarOps<T>::negligible(kv.second); });
  }
}

template <Amplitude T>
RealOf<T> FockState<T>::norm2() const {
  RealOf<T> acc{};
  for (const auto& [occ, amp] : terms_) acc += ScalarOps<T>::norm(amp);
  return acc;
}

template <Amplitude T>
FockState<T> FockState<T>::scaled(const T& s) const {
  FockState out(ports_);
  for (const auto& [occ, amp] : terms_) out.add(occ, amp * s);
  out.prune();
  return out;
}

template <Amplitude T>
T inner_product(const FockState<T>& a, const FockState<T>& b) {
  T acc = ScalarOps<T>::zero();
  for (const auto& [occ, amp] : a.terms()) {
    auto it = b.terms().find(occ);
    if (it != b.terms().end()) acc += ScalarOps<T>::conj(amp) * it->second;
  }
  return acc;
}

template <Amplitude T>
FockState<T> bosonic_product(const FockState<T>& s1, const FockState<T>& s2, int max_photons) {
  if (s1.ports() != s2.ports()) throw DimensionError("bosonic product of states on different devices");
  if (s1.photon_number() + s2.photon_number() > max_photons)
    throw CapacityError("product would hold " + std::to_string(s1.photon_number() + s2.photon_number()) +
                        " photons, capacity is " + std::to_string(max_photons));
  FockState<T> out(s1.ports());
  for (const auto& [o1, a1] : s1.terms()) {
    for (const auto& [o2, a2] : s2.terms()) {
      Occupation merged = o1;
      // |n>|m> as creation operators -> prod sqrt(C(n+m, n)) |n+m>
      long long enhancement = 1;
      for (size_t k = 0; k < o2.counts().size(); ++k) {
        const int n = o1.counts()[k];
        const int m = o2.counts()[k];
        if (m == 0) continue;
        enhancement *= binomial(n + m, n);
        merged.add(Mode{static_cast<int>(k / 2), static_cast<Polarization>(k % 2)}, m);
      }
      out.add(merged, a1 * a2 * ScalarOps<T>::sqrt_of(enhancement));
    }
  }
  out.prune();
  return out;
}

template <Amplitude T>
FockState<T> apply_port_unitary(const SquareMatrix<T>& u, const FockState<T>& s) {
  const int ports = s.ports();
  if (u.dim() != ports)
    throw DimensionError("port unitary is " + std::to_string(u.dim()) + "x" + std::to_string(u.dim()) +
                         " but the state lives on " + std::to_string(ports) + " ports");
  FockState<T> out(ports);
  for (const auto& [occ, amp] : s.terms()) {
    // |n> = prod (a^dagger)^{n_k} / sqrt(n_k!) |0>; expand the monomial
    // photon by photon, then renormalise into number kets.
    T prefactor = amp;
    std::vector<Mode> photons;
    for (int k = 0; k < 2 * ports; ++k) {
      const int n = occ.counts()[k];
      prefactor = prefactor * inv_sqrt_factorial<T>(n);
      for (int j = 0; j < n; ++j) photons.push_back(Mode{k / 2, static_cast<Polarization>(k % 2)});
    }
    std::map<Occupation, T> monomials{{Occupation(ports), prefactor}};
    for (const Mode& ph : photons) {
      std::map<Occupation, T> next;
      for (const auto& [mono, coeff] : monomials) {
        for (int q = 0; q < ports; ++q) {
          const T& uqp = u(q, ph.port);
          if (ScalarOps<T>::is_zero(uqp)) continue;
          Occupation grown = mono;
          grown.add(Mode{q, ph.pol});
          auto [it, inserted] = next.try_emplace(grown, coeff * uqp);
          if (!inserted) it->second += coeff * uqp;
        }
      }
      monomials = std::move(next);
    }
    for (const auto& [mono, coeff] : monomials) {
      T amp_out = coeff;
      for (int k = 0; k < 2 * ports; ++k) amp_out = amp_out * sqrt_factorial<T>(mono.counts()[k]);
      out.add(mono, amp_out);
    }
  }
  out.prune();
  return out;
}

template <Amplitude T>
FockState<T> project(const FockState<T>& s, const OccupationPredicate& pred) {
  FockState<T> out(s.ports());
  for (const auto& [occ, amp] : s.terms())
    if (pred(occ)) out.add(occ, amp);
  return out;
}

template <Amplitude T>
FockState<T> contract_port(const FockState<T>& s, int port,
                           const std::vector<std::pair<std::pair<int, int>, T>>& local_ket) {
  FockState<T> out(s.ports());
  for (const auto& [occ, amp] : s.terms()) {
    const int h = occ.count(port, Polarization::H);
    const int v = occ.count(port, Polarization::V);
    for (const auto& [hv, c] : local_ket) {
      if (hv.first == h && hv.second == v) out.add(occ.without_port(port), ScalarOps<T>::conj(c) * amp);
    }
  }
  out.prune();
  return out;
}

#define MULTIPORT_INSTANTIATE_FOCK(T)                                                                 \
  template class FockState<T>;                                                                        \
  template T inner_product(const FockState<T>&, const FockState<T>&);                                 \
  template FockState<T> bosonic_product(const FockState<T>&, const FockState<T>&, int);               \
  template FockState<T> apply_port_unitary(const SquareMatrix<T>&, const FockState<T>&);              \
  template FockState<T> project(const FockState<T>&, const OccupationPredicate&);                     \
  template FockState<T> contract_port(const FockState<T>&, int,                                      \
                                      const std::vector<std::pair<std::pair<int, int>, T>>&);

MULTIPORT_INSTANTIATE_FOCK(Complex)
MULTIPORT_INSTANTIATE_FOCK(ExactComplex)

}  // namespace multiport
