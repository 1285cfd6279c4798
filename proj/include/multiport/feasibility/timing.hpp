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

// Timing and coherence arithmetic for a multiport of edge length d.

#include <optional>
#include <string>
#include <vector>

namespace multiport {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
/// Factor standing in for "much greater than" in the coherence constraint.
inline constexpr double kMuchGreaterFactor = 10.0;
/// Clock period as a multiple of the single-edge transit time.
inline constexpr double kClockFactor = 10.0;

struct TimingInputs {
  double d = 1e-4;  // edge length, meters
  double refractive_index = 1.0;
  std::optional<double> pulse_duration;  // Delta t, seconds
  std::optional<double> bandwidth;       // Delta nu, Hz; 0 means monochromatic
  std::optional<double> detector_time;   // T_D, seconds
};

struct Constraint {
  std::string name;  // e.g. "tau_coh >= 10 T_D"
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct TimingBudget {
  double d = 0.0;
  double refractive_index = 1.0;
  double T = 0.0;                  // n d / c
  double T_c = 0.0;                // clock period
  double max_sampling_rate = 0.0;  // 1 / T_c
  std::optional<double> pulse_duration;
  std::optional<double> bandwidth;
  double tau_coh = 0.0;  // 1 / Delta nu, may be +inf
  double l_coh = 0.0;    // c tau_coh
  std::optional<double> detector_time;
  double phase_spread = 0.0;  // 2 pi d / (c tau_coh)
  std::vector<Constraint> constraints;
  bool constraints_ok = false;

  std::vector<std::string> violations() const;
};

/// Throws SpecError unless d and the index are positive, at most one of
/// pulse_duration and bandwidth is given, and all given times are positive.
/// With neither spectral input the source is treated as monochromatic.
TimingBudget assess(const TimingInputs& in);

struct CoherenceBudget {
  long long steps = 0;  // floor(tau_coh / T_c)
  bool unbounded = false;
  double tau_coh = 0.0;
  double T_c = 0.0;
};

CoherenceBudget coherence_budget(double tau_coh, double T_c);

}  // namespace multiport
