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

#include "multiport/core/scalar.hpp"

namespace multiport {

/// One polygon corner: a 50/50-style beam splitter with amplitudes (r, t)
/// and the mirror unit closing its fourth arm.
struct VertexParams {
  Complex r{0.0, 0.7071067811865476};  // i/sqrt2
  Complex t{0.7071067811865476, 0.0};  // 1/sqrt2
  Complex mirror{0.0, -1.0};           // round-trip factor of mirror + phase plate

  /// |r|^2 + |t|^2 = 1 and r t* + t r* = 0, |mirror| = 1.
  bool is_valid(double tol = kFloatTolerance) const;
};

/// Regular n-sided directionally-unbiased multiport.
struct MultiportSpec {
  int ports = 3;
  std::vector<VertexParams> vertices;  // one per corner
  std::vector<double> edge_phases;     // radians; edge k joins corner k to corner k+1
  int max_steps = 100;

  /// n identical default corners, zero edge phase.
  static MultiportSpec regular(int n);

  /// Throws SpecError naming the first violated invariant.
  void validate() const;
  bool identical_vertices() const;
};

}  // namespace multiport
