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

// Reference models for tests, written independently of the library's
// graph compiler and Fock-space code. Plain std::complex<double> only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;  // Mat[row][col]

struct Corner {
  C r{0.0, 1.0 / std::numbers::sqrt2};
  C t{1.0 / std::numbers::sqrt2, 0.0};
  C mirror{0.0, -1.0};
};

struct Polygon {
  std::vector<Corner> corners;
  std::vector<double> edge_phase;  // edge k joins corner k and k+1
  static Polygon regular(int n) { return Polygon{std::vector<Corner>(n), std::vector<double>(n, 0.0)}; }
  int n() const { return static_cast<int>(corners.size()); }
};

// Arm-level network: every beam splitter has arms ext(0), mirror(1),
// east(2), south(3). The state is the amplitude arriving on each arm.
// A step scatters every arrival, then carries each departure to the arm
// it reaches next; departures on a lead arm are recorded as exits.
class ArmNetwork {
 public:
  struct Slot {
    int vertex, corner;
  };

  explicit ArmNetwork(std::vector<Polygon> vertices) : v_(std::move(vertices)) {
    for (const auto& p : v_) {
      offset_.push_back(total_);
      total_ += p.n();
    }
    ext_target_.assign(total_, {-1, C{}});
  }

  void connect(Slot a, Slot b, double phase) {
    const C f = std::polar(1.0, phase);
    ext_target_[index(a)] = {index(b), f};
    ext_target_[index(b)] = {index(a), f};
  }
  int add_lead(Slot s) {
    leads_.push_back(index(s));
    return static_cast<int>(leads_.size()) - 1;
  }

  int dim() const { return 4 * total_; }

  // Dense one-step operators on arrival amplitudes: next = M * cur,
  // exits = L * cur.
  Mat step_matrix() const {
    Mat m(dim(), Vec(dim()));
    for (int c = 0; c < total_; ++c) {
      const auto [vi, k] = locate(c);
      const Polygon& p = v_[vi];
      const Corner& cr = p.corners[k];
      const int n = p.n();
      C s[4][4] = {};
      // Transmission: ext<->east, mirror<->south. Reflection: ext<->south, mirror<->east.
      s[2][0] = s[0][2] = cr.t;
      s[3][1] = s[1][3] = cr.t;
      s[3][0] = s[0][3] = cr.r;
      s[2][1] = s[1][2] = cr.r;
      for (int in = 0; in < 4; ++in)
        for (int out = 0; out < 4; ++out) {
          if (s[out][in] == C{}) continue;
          int dest = -1;
          C f{1.0, 0.0};
          if (out == 1) {
            dest = 4 * c + 1;
            f = cr.mirror;
          } else if (out == 2) {
            dest = 4 * (offset_[vi] + (k + 1) % n) + 3;
            f = std::polar(1.0, p.edge_phase[k]);
          } else if (out == 3) {
            const int prev = (k + n - 1) % n;
            dest = 4 * (offset_[vi] + prev) + 2;
            f = std::polar(1.0, p.edge_phase[prev]);
          } else if (ext_target_[c].first >= 0) {
            dest = 4 * ext_target_[c].first;
            f = ext_target_[c].second;
          }
          if (dest >= 0) m[dest][4 * c + in] += f * s[out][in];
        }
    }
    return m;
  }

  Mat exit_matrix() const {
    Mat l(leads_.size(), Vec(dim()));
    for (size_t j = 0; j < leads_.size(); ++j) {
      const int c = leads_[j];
      const auto [vi, k] = locate(c);
      const Corner& cr = v_[vi].corners[k];
      l[j][4 * c + 2] += cr.t;
      l[j][4 * c + 3] += cr.r;
    }
    return l;
  }

  // Exit amplitudes per lead for steps 1..steps (step 1 scatters the
  // injected photon), by repeated dense multiplication.
  std::vector<Vec> run(int lead, int steps) const {
    const Mat m = step_matrix();
    const Mat l = exit_matrix();
    Vec cur(dim());
    cur[4 * leads_.at(lead)] = 1.0;
    std::vector<Vec> out;
    for (int s = 1; s <= steps; ++s) {
      out.push_back(apply(l, cur));
      cur = apply(m, cur);
    }
    return out;
  }

  static Vec apply(const Mat& m, const Vec& v) {
    Vec out(m.size());
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
  }

 private:
  int index(Slot s) const { return offset_.at(s.vertex) + s.corner; }
  std::pair<int, int> locate(int c) const {
    int vi = static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), c) - offset_.begin()) - 1;
    return {vi, c - offset_[vi]};
  }

  std::vector<Polygon> v_;
  std::vector<int> offset_;
  int total_ = 0;
  std::vector<std::pair<int, C>> ext_target_;
  std::vector<int> leads_;
};

// Single polygon with a lead on every corner.
inline ArmNetwork single(const Polygon& p) {
  ArmNetwork net({p});
  for (int k = 0; k < p.n(); ++k) net.add_lead({0, k});
  return net;
}

// Steady-state matrix by summing exits until the remaining amplitude is
// below tol; U[out][in].
inline Mat steady_state(const Polygon& p, int max_steps, double tol) {
  const ArmNetwork net = single(p);
  const Mat m = net.step_matrix();
  const Mat l = net.exit_matrix();
  Mat u(p.n(), Vec(p.n()));
  for (int in = 0; in < p.n(); ++in) {
    Vec cur(net.dim());
    cur[4 * in] = 1.0;
    for (int s = 0; s < max_steps; ++s) {
      const Vec e = ArmNetwork::apply(l, cur);
      for (int o = 0; o < p.n(); ++o) u[o][in] += e[o];
      cur = ArmNetwork::apply(m, cur);
      double rest = 0.0;
      for (const auto& a : cur) rest += std::norm(a);
      if (std::sqrt(rest) < tol) break;
    }
  }
  return u;
}

// Creation-operator polynomials over 2 * ports modes (port-major, H then V).
// A monomial is the sorted list of its modes.
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, C>;

inline Poly times(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out[m] += ca * cb;
    }
  return out;
}

// a+_{p,pol} -> sum_q U[q][p] a+_{q,pol} applied to every factor.
inline Poly transform(const Poly& a, const Mat& u) {
  Poly out;
  for (const auto& [m, c] : a) {
    Poly acc{{Monomial{}, c}};
    for (int mode : m) {
      Poly lin;
      const int p = mode / 2;
      const int pol = mode % 2;
      for (size_t q = 0; q < u.size(); ++q)
        if (u[q][p] != C{}) lin[Monomial{static_cast<int>(2 * q) + pol}] = u[q][p];
      acc = times(acc, lin);
    }
    for (const auto& [mm, cc] : acc) out[mm] += cc;
  }
  return out;
}

// Fock-basis amplitude of a monomial: coefficient * sqrt(prod n_i!).
inline double fock_weight(const Monomial& m) {
  double w = 1.0;
  size_t k = 0;
  while (k < m.size()) {
    size_t j = k;
    while (j < m.size() && m[j] == m[k]) ++j;
    for (size_t f = 2; f <= j - k; ++f) w *= static_cast<double>(f);
    k = j;
  }
  return std::sqrt(w);
}

inline double norm2(const Poly& a) {
  double s = 0.0;
  for (const auto& [m, c] : a) s += std::norm(c * fock_weight(m));
  return s;
}

// Bell pair as a polynomial: family 0 = Psi, 1 = Phi; sign +1 or -1.
inline Poly bell(int family, int sign, int p, int q) {
  const double h = 1.0 / std::numbers::sqrt2;
  const int H = 0;
  const int V = 1;
  Poly out;
  auto mono = [](int a, int b) {
    Monomial m{a, b};
    std::sort(m.begin(), m.end());
    return m;
  };
  if (family == 0) {
    out[mono(2 * p + H, 2 * q + V)] += h;
    out[mono(2 * p + V, 2 * q + H)] += sign * h;
  } else {
    out[mono(2 * p + H, 2 * q + H)] += h;
    out[mono(2 * p + V, 2 * q + V)] += sign * h;
  }
  return out;
}

// Counts of each mode in a monomial, 2 * ports entries.
inline std::vector<int> occupation(const Monomial& m, int ports) {
  std::vector<int> n(2 * ports, 0);
  for (int x : m) ++n[x];
  return n;
}

}  // namespace oracle
