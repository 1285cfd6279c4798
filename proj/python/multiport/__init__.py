# Copyright 2026 The Multiport Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Directionally-unbiased multiport simulator."""

import json as _json

from ._core import (
    CapacityError,
    ConfigError,
    ConvergenceError,
    DimensionError,
    Error,
    InvariantError,
    MultiportSpec,
    SpecError,
    VertexParams,
    assess,
    bell_table,
    coherence_budget,
    compare_up_to_global_phase,
    exit_record,
    grover_coin,
    group_table,
    herald_split,
    is_cnot,
    report_json,
    steady_state,
    symmetric_unitary,
    unitary,
)

__version__ = "0.1.0"


def report(command, config="", mode=None):
    """Runs a tool subcommand on INI configuration text and returns the parsed document."""
    return _json.loads(report_json(command, config, mode))


__all__ = [
    "CapacityError",
    "ConfigError",
    "ConvergenceError",
    "DimensionError",
    "Error",
    "InvariantError",
    "MultiportSpec",
    "SpecError",
    "VertexParams",
    "assess",
    "bell_table",
    "coherence_budget",
    "compare_up_to_global_phase",
    "exit_record",
    "grover_coin",
    "group_table",
    "herald_split",
    "is_cnot",
    "report",
    "report_json",
    "steady_state",
    "symmetric_unitary",
    "unitary",
]
