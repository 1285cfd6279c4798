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

#include <vector>

#include "multiport/core/matrix.hpp"

namespace multiport {

struct EigenPair {
  Complex value;
  std::vector<Complex> vector;  // unit norm
};

/// Eigen-decomposition of a small (dim <= 8) complex matrix. Eigenvalues that
/// agree within cluster_tol are treated as one degenerate subspace and their
/// vectors orthonormalised. Pairs come sorted by (arg, |lambda|). Throws
/// ConvergenceError carrying the worst residual ||Mv - lambda v|| when the
/// solver fails or the residual exceeds residual_tol.
std::vector<EigenPair> eigensystem_small(const UnitaryMatrix& m, double cluster_tol = 1e-8,
                                         double residual_tol = 1e-10);

struct EigenSpace {
  Complex value;
  std::vector<std::vector<Complex>> basis;
};

/// Groups consecutive pairs with equal eigenvalues (within tol).
std::vector<EigenSpace> group_eigenspaces(const std::vector<EigenPair>& pairs, double tol = 1e-8);

}  // namespace multiport
