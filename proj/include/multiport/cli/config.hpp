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

// Run configuration: INI-style files with sections [run], [device],
// [corner.K], [paths], [bell], [family], [walk], [vertex.K], [edge.K],
// [lead.NAME], [schedule.STEP.VERTEX] and [feasibility].

#include <map>
#include <optional>
#include <string>

#include "multiport/bell/bell.hpp"
#include "multiport/device/spec.hpp"
#include "multiport/feasibility/timing.hpp"
#include "multiport/walk/network.hpp"

namespace multiport::cli {

enum class NumericMode { Float, Exact };
enum class OutputFormat { Json, Csv };

inline constexpr const char* kModeEnvVar = "MULTIPORT_NUMERIC_MODE";

struct RunConfig {
  MultiportSpec device = MultiportSpec::regular(3);
  NumericMode mode = NumericMode::Float;
  OutputFormat format = OutputFormat::Json;

  // exits / paths / unitary
  std::string input = "A";
  std::string output = "B";
  int steps = 10;
  int encounters = 4;
  double tol = 1e-12;

  // bell-table / group-table
  HeraldCondition condition;

  // family
  double phi_a_start = -1.5707963267948966;
  double phi_a_stop = -1.5707963267948966;
  int phi_a_count = 1;
  double phi = 0.0;

  // walk
  std::optional<GraphSpec> graph;  // single physical vertex when absent
  VertexKind default_vertex = VertexKind::Physical;
  Schedule schedule;

  // feasibility
  TimingInputs timing;
  std::optional<double> tau_coh;  // overrides the derived coherence time for the budget
};

/// Parses a complex literal: "re+im i" (e.g. "0.5-0.5i", "-i", "1/2") or
/// "mag@phase" with the phase in radians, as a multiple of pi ("-0.5pi",
/// "pi/2") or in degrees ("90deg").
Complex parse_complex(const std::string& text);
/// Phase literal as accepted after '@'.
double parse_phase(const std::string& text);
/// "grover" or rows separated by ';' with comma-separated complex entries.
UnitaryMatrix parse_matrix(const std::string& text, int degree);

NumericMode parse_mode(const std::string& text);
OutputFormat parse_format(const std::string& text);
/// Default numeric mode from the environment, Float when unset.
NumericMode mode_from_env();

/// Parses configuration text on top of base. Throws ConfigError carrying
/// the offending line.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Rebuilds device vertices and edge phases after ports changes.
void resize_device(MultiportSpec& spec, int ports);

}  // namespace multiport::cli
