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

#include <optional>
#include <string>
#include <vector>

#include "multiport/device/graph.hpp"

namespace multiport {

/// Exit amplitudes after the N-th beam-splitter encounter (N counts the
/// entry encounter, so N encounters span N-1 segment traversals).
template <Amplitude T>
struct ExitRow {
  int encounter = 0;  // N
  std::vector<T> amplitudes;
  RealOf<T> step_probability{};
  RealOf<T> cumulative_probability{};
  RealOf<T> internal_probability{};
};

template <Amplitude T>
struct ExitRecord {
  int input_port = 0;
  std::vector<ExitRow<T>> rows;  // N = 1 .. n_max
  const ExitRow<T>& at(int encounter) const { return rows.at(encounter - 1); }
};

/// Photon injected at input_port, evolved through n_max encounters.
template <Amplitude T>
ExitRecord<T> exit_record(const MultiportSpec& spec, int input_port, int n_max);

struct PathSymbol {
  char kind = 't';  // 'r', 't', or 'M'
  int vertex = 0;
};

template <Amplitude T>
struct PathTrace {
  std::vector<PathSymbol> symbols;
  T amplitude;
  int encounters = 0;  // beam-splitter encounters N
  int mirror_encounters() const;
  /// "t r" style string, one token per symbol.
  std::string compact() const;
  /// Tokens annotated with the corner, e.g. "tA tB MB tB tA".
  std::string annotated() const;
};

/// All paths entering at input_port that leave through exit_port exactly at
/// encounter N. Their amplitudes sum to the matching ExitRecord entry.
template <Amplitude T>
std::vector<PathTrace<T>> enumerate_paths(const MultiportSpec& spec, int input_port, int exit_port, int encounters);

struct SteadyStateResult {
  UnitaryMatrix matrix;   // column j: coherent exit amplitudes for input j
  double residual = 0.0;  // largest norm of amplitude still inside the device
  int steps_used = 0;     // segment traversals, worst column
  bool converged = false;
};

/// Long-time transition matrix by direct step evolution: stops once the
/// un-exited amplitude norm drops below tol, or after spec.max_steps.
SteadyStateResult steady_state(const MultiportSpec& spec, double tol = 1e-12);

/// The same matrix by summing the whole step series in closed form,
/// direct + X (I - W)^{-1} inject. Exact in exact mode. Dark internal modes
/// that no lead can reach are ignored; ConvergenceError if a lead feeds a
/// mode that never decays.
template <Amplitude T>
SquareMatrix<T> steady_state_resolvent(const MultiportSpec& spec);

template <Amplitude T>
struct AmplitudeSeries {
  std::vector<int> encounters;  // N of each nonzero term
  std::vector<T> terms;
  std::vector<T> partial_sums;
  T ratio;         // common ratio of the trailing terms
  T extrapolated;  // partial sum + geometric tail
};

/// Input-to-output amplitude as a series over exit times, with the tail
/// summed as a geometric series. The trailing min_ratios ratios of
/// successive nonzero terms must agree (within 1e-9 in floating mode,
/// exactly in exact mode) and be smaller than 1 in modulus; otherwise
/// ConvergenceError.
template <Amplitude T>
AmplitudeSeries<T> amplitude_series(const MultiportSpec& spec, int input_port, int output_port, int n_max = 10,
                                    int min_ratios = 3);

}  // namespace multiport
