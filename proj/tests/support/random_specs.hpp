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

// Random valid device specifications shared by property tests.

#include <cmath>
#include <numbers>
#include <random>

#include "multiport/device/spec.hpp"
#include "oracles.hpp"

namespace testing_support {

inline multiport::VertexParams random_corner(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  const double theta = ang(rng);
  const double alpha = ang(rng);
  multiport::VertexParams p;
  p.t = std::polar(std::cos(theta), alpha);
  p.r = std::complex<double>(0.0, 1.0) * std::polar(std::sin(theta), alpha);
  p.mirror = std::polar(1.0, ang(rng));
  return p;
}

inline multiport::MultiportSpec random_spec(std::mt19937& rng, int n, bool identical = false) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  multiport::MultiportSpec s = multiport::MultiportSpec::regular(n);
  const multiport::VertexParams shared = random_corner(rng);
  const double shared_phase = ang(rng);
  for (int k = 0; k < n; ++k) {
    s.vertices[k] = identical ? shared : random_corner(rng);
    s.edge_phases[k] = identical ? shared_phase : ang(rng);
  }
  return s;
}

inline oracle::Polygon to_polygon(const multiport::MultiportSpec& s) {
  oracle::Polygon p;
  for (const auto& v : s.vertices) p.corners.push_back(oracle::Corner{v.r, v.t, v.mirror});
  p.edge_phase = s.edge_phases;
  return p;
}

}  // namespace testing_support
