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
#include "multiport/device/spec.hpp"

#include <cmath>
#include <string>

#include "multiport/core/errors.hpp"
#include "multiport/core/ports.hpp"

namespace multiport {

bool VertexParams::is_valid(double tol) const {
  const double power = std::norm(r) + std::norm(t);
  const Complex cross = r * std::conj(t) + t * std::conj(r);
  return std::abs(power - 1.0) < tol && std::abs(cross) < tol && std::abs(std::abs(mirror) - 1.0) < tol;
}

MultiportSpec MultiportSpec::regular(int n) {
  MultiportSpec spec;
  spec.ports = n;
  spec.vertices.assign(n > 0 ? n : 0, VertexParams{});
  spec.edge_phases.assign(n > 0 ? n : 0, 0.0);
  return spec;
}

void MultiportSpec::validate() const {
  if (ports < 3) throw SpecError("a multiport needs at least 3 ports, got " + std::to_string(ports));
  if (static_cast<int>(vertices.size()) != ports)
    throw SpecError("expected " + std::to_string(ports) + " vertex parameter sets, got " +
                    std::to_string(vertices.size()));
  if (static_cast<int>(edge_phases.size()) != ports)
    throw SpecError("expected " + std::to_string(ports) + " edge phases, got " + std::to_string(edge_phases.size()));
  for (int v = 0; v < ports; ++v) {
    const auto& p = vertices[v];
    if (std::abs(std::norm(p.r) + std::norm(p.t) - 1.0) > 1e-9)
      throw SpecError("vertex " + port_label(v) + ": |r|^2 + |t|^2 != 1");
    if (std::abs(p.r * std::conj(p.t) + p.t * std::conj(p.r)) > 1e-9)
      throw SpecError("vertex " + port_label(v) + ": beam splitter block is not unitary (r t* + t r* != 0)");
    if (std::abs(std::abs(p.mirror) - 1.0) > 1e-9)
      throw SpecError("vertex " + port_label(v) + ": mirror factor must have unit modulus");
  }
  for (double phase : edge_phases)
    if (!std::isfinite(phase)) throw SpecError("edge phase must be finite");
  if (max_steps < 1) throw SpecError("max_steps must be positive");
}

bool MultiportSpec::identical_vertices() const {
  for (size_t v = 1; v < vertices.size(); ++v) {
    if (vertices[v].r != vertices[0].r || vertices[v].t != vertices[0].t || vertices[v].mirror != vertices[0].mirror)
      return false;
    if (edge_phases[v] != edge_phases[0]) return false;
  }
  return true;
}

}  // namespace multiport
