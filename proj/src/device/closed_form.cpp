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
#include "multiport/device/closed_form.hpp"

#include <cmath>
#include <numbers>

namespace multiport {

UnitaryMatrix symmetric_unitary(double phi_a, double phi) {
  const double c = std::cos(phi);
  const double scale = 1.0 / std::sqrt(1.0 + 8.0 * c * c);
  const Complex global = std::polar(scale, phi_a);
  const Complex off = -2.0 * c * std::polar(1.0, phi);
  UnitaryMatrix v(3);
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) v(r, k) = global * (r == k ? Complex(1.0, 0.0) : off);
  return v;
}

namespace {

double max_dev_at(const UnitaryMatrix& m1, const UnitaryMatrix& m2, double theta) {
  const Complex c = std::polar(1.0, theta);
  double worst = 0.0;
  for (int r = 0; r < m1.dim(); ++r)
    for (int k = 0; k < m1.dim(); ++k) worst = std::max(worst, std::abs(m1(r, k) - c * m2(r, k)));
  return worst;
}

}  // namespace

PhaseMatch compare_up_to_global_phase(const UnitaryMatrix& m1, const UnitaryMatrix& m2, double tol) {
  if (m1.dim() != m2.dim()) throw DimensionError("cannot compare matrices of different sizes");
  // Start from the Frobenius-optimal phase arg <m2, m1>, then polish the
  // max-norm objective with a coarse scan plus golden-section refinement.
  Complex overlap{0.0, 0.0};
  for (int r = 0; r < m1.dim(); ++r)
    for (int k = 0; k < m1.dim(); ++k) overlap += std::conj(m2(r, k)) * m1(r, k);
  double best_theta = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  double best = max_dev_at(m1, m2, best_theta);
  constexpr int kScan = 720;
  for (int s = 0; s < kScan; ++s) {
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * s / kScan;
    const double d = max_dev_at(m1, m2, theta);
    if (d < best) {
      best = d;
      best_theta = theta;
    }
  }
  double lo = best_theta - 2.0 * std::numbers::pi / kScan;
  double hi = best_theta + 2.0 * std::numbers::pi / kScan;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double a = hi - golden * (hi - lo);
    const double b = lo + golden * (hi - lo);
    if (max_dev_at(m1, m2, a) < max_dev_at(m1, m2, b)) hi = b;
    else lo = a;
  }
  const double refined = 0.5 * (lo + hi);
  if (max_dev_at(m1, m2, refined) < best) {
    best = max_dev_at(m1, m2, refined);
    best_theta = refined;
  }
  PhaseMatch out;
  out.phase = std::polar(1.0, best_theta);
  out.max_dev = best;
  out.match = best < tol;
  return out;
}

}  // namespace multiport
