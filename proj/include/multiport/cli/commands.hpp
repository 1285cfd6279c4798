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

// Subcommand reports. Each returns the full structured document that the
// tool prints; the CSV writers flatten the same documents.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "multiport/cli/config.hpp"

namespace multiport::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigFailure = 1,
  kSpecFailure = 2,
  kConvergenceFailure = 3,
  kInvariantFailure = 4,
};

Json exits_report(const RunConfig& cfg);
Json paths_report(const RunConfig& cfg);
Json unitary_report(const RunConfig& cfg);
Json family_report(const RunConfig& cfg);
Json bell_table_report(const RunConfig& cfg);
Json group_table_report(const RunConfig& cfg);
Json cnot_report(const RunConfig& cfg);
Json walk_report(const RunConfig& cfg);
Json feasibility_report(const RunConfig& cfg);

/// Dispatches by subcommand name; throws ConfigError for unknown names.
Json report(const std::string& command, const RunConfig& cfg);
/// One header line plus data rows.
std::string to_csv(const Json& report);

/// Maps a library error onto an ExitCode.
int exit_code_for(const std::exception& e);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multiport::cli
