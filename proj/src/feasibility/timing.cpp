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
#include "multiport/feasibility/timing.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "multiport/core/errors.hpp"

namespace multiport {

std::vector<std::string> TimingBudget::violations() const {
  std::vector<std::string> out;
  for (const auto& c : constraints)
    if (!c.ok) out.push_back(c.name);
  return out;
}

TimingBudget assess(const TimingInputs& in) {
  if (!(in.d > 0.0)) throw SpecError("edge length must be positive");
  if (!(in.refractive_index > 0.0)) throw SpecError("refractive index must be positive");
  if (in.pulse_duration && in.bandwidth) throw SpecError("give either pulse duration or bandwidth, not both");
  if (in.pulse_duration && !(*in.pulse_duration > 0.0)) throw SpecError("pulse duration must be positive");
  if (in.bandwidth && !(*in.bandwidth >= 0.0)) throw SpecError("bandwidth must be non-negative");
  if (in.detector_time && !(*in.detector_time > 0.0)) throw SpecError("detector time must be positive");

  constexpr double inf = std::numeric_limits<double>::infinity();
  TimingBudget b;
  b.d = in.d;
  b.refractive_index = in.refractive_index;
  b.T = in.refractive_index * in.d / kSpeedOfLight;
  b.T_c = kClockFactor * b.T;
  b.max_sampling_rate = 1.0 / b.T_c;
  b.pulse_duration = in.pulse_duration;
  b.bandwidth = in.bandwidth;
  // Transform-limited Gaussian: Delta t Delta nu = 1/(4 pi).
  if (in.pulse_duration) b.bandwidth = 1.0 / (4.0 * std::numbers::pi * *in.pulse_duration);
  if (b.bandwidth && *b.bandwidth > 0.0) {
    b.tau_coh = 1.0 / *b.bandwidth;
    if (!b.pulse_duration) b.pulse_duration = 1.0 / (4.0 * std::numbers::pi * *b.bandwidth);
  } else {
    b.tau_coh = inf;
  }
  b.l_coh = kSpeedOfLight * b.tau_coh;
  b.phase_spread = std::isinf(b.tau_coh) ? 0.0 : 2.0 * std::numbers::pi * in.d / (kSpeedOfLight * b.tau_coh);
  b.detector_time = in.detector_time;

  if (in.detector_time) {
    const double td = *in.detector_time;
    b.constraints.push_back({"tau_coh >= 10 T_D", b.tau_coh, kMuchGreaterFactor * td, b.tau_coh >= kMuchGreaterFactor * td});
    b.constraints.push_back({"T_D >= T_c", td, b.T_c, td >= b.T_c});
  }
  b.constraints_ok = b.violations().empty();
  return b;
}

CoherenceBudget coherence_budget(double tau_coh, double T_c) {
  if (!(T_c > 0.0)) throw SpecError("clock period must be positive");
  if (!(tau_coh >= 0.0)) throw SpecError("coherence time must be non-negative");
  CoherenceBudget c;
  c.tau_coh = tau_coh;
  c.T_c = T_c;
  if (std::isinf(tau_coh)) {
    c.unbounded = true;
    c.steps = std::numeric_limits<long long>::max();
  } else {
    c.steps = static_cast<long long>(std::floor(tau_coh / T_c));
  }
  return c;
}

}  // namespace multiport
