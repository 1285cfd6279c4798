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

#include "multiport/core/matrix.hpp"

namespace multiport {

/// Most general 3x3 unitary that is symmetric under every port permutation:
/// e^{i phi_a} / sqrt(1 + 8 cos^2 phi) * [[1, b, b], [b, 1, b], [b, b, 1]] with
/// b = -2 cos(phi) e^{i phi}; phi is the phase of the off-diagonal entries
/// relative to the diagonal. phi = 0, phi_a = -pi/2 is the default
/// three-port's transition matrix.
UnitaryMatrix symmetric_unitary(double phi_a, double phi);

/// Grover coin G_n: 2/n off the diagonal, 2/n - 1 on it.
template <Amplitude T = Complex>
SquareMatrix<T> grover_coin(int n) {
  if (n < 2) throw SpecError("Grover coin needs n >= 2");
  SquareMatrix<T> g(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = ScalarOps<T>::fraction(r == c ? 2 - n : 2, n);
  return g;
}

struct PhaseMatch {
  bool match = false;
  Complex phase{1.0, 0.0};  // unit modulus, m1 ~ phase * m2
  double max_dev = 0.0;     // max_{ij} |m1 - phase * m2|
};

/// Finds the unit-modulus c minimising max |m1 - c m2|.
PhaseMatch compare_up_to_global_phase(const UnitaryMatrix& m1, const UnitaryMatrix& m2, double tol = 1e-9);

}  // namespace multiport
