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
import math

import numpy as np
import pytest

import multiport as mp


def test_exit_record_exact():
    rows = mp.exit_record(mp.MultiportSpec(3), input=0, n_max=10, exact=True)
    assert [r["N"] for r in rows] == list(range(1, 11))
    assert rows[1]["exact"] == ["0", "1/2*i", "1/2*i"]
    assert rows[3]["exact"][0] == "-1/2*i"
    assert rows[9]["cumulative_exact"] == "511/512"
    assert all(a == 0 for a in rows[2]["amplitudes"])


def test_unitary_float_and_exact():
    spec = mp.MultiportSpec.regular(3)
    u = mp.unitary(spec)
    ref = -1j / 3 * np.array([[1, -2, -2], [-2, 1, -2], [-2, -2, 1]])
    assert np.max(np.abs(u - ref)) < 1e-12
    assert mp.unitary(spec, exact=True)[0] == ["-1/3*i", "2/3*i", "2/3*i"]
    st = mp.steady_state(spec)
    assert st["converged"] and st["residual"] < 1e-12
    match, phase, dev = mp.compare_up_to_global_phase(u, mp.grover_coin(3))
    assert match and abs(phase - 1j) < 1e-12 and dev < 1e-12


def test_symmetric_family_is_unitary():
    for phi_a, phi in [(0.3, -1.1), (2.0, 0.7), (-math.pi / 2, 0.0)]:
        v = mp.symmetric_unitary(phi_a, phi)
        assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


def test_bell_engine():
    rows = mp.bell_table()
    assert len(rows) == 16
    row = next(r for r in rows if r["input"] == "Psi+" and r["control"] == "Psi+")
    assert (row["out_s"], row["out_o"]) == ("Phi+", "Psi+")
    split = mp.herald_split("Psi+", "Psi+")
    assert split["o_exact"] == "169/19683"
    assert split["s_exact"] == "1682/19683"
    assert abs(split["s"] + split["o"] + split["rejected"] - 1) < 1e-12
    table = mp.group_table("s")
    assert table["klein"] and table["identity"] == "Phi+"
    assert mp.group_table("o")["identity"] == "Psi+"
    assert mp.is_cnot()


def test_feasibility():
    b = mp.assess(d=1e-4, pulse_duration=100e-12)
    assert abs(b["T_c"] - 3.3356e-12) < 1e-15
    assert abs(b["bandwidth"] - 1 / (4 * math.pi * 1e-10)) < 1e-3
    assert mp.coherence_budget(1e-9, 3.3e-12) == 303
    assert mp.coherence_budget(math.inf, 3.3e-12) is None


def test_report_runs_a_walk():
    doc = mp.report("walk", "[walk]\nsteps = 5\nvertex_kind = coin\n", mode="exact")
    assert doc["schema"] == "multiport.walk/1"
    assert doc["mode"] == "exact"


def test_errors_map_to_python():
    with pytest.raises(mp.SpecError):
        mp.exit_record(mp.MultiportSpec(2))
    with pytest.raises(mp.ConfigError):
        mp.report("exits", "[run]\nbogus = 1\n")
    with pytest.raises(mp.Error):
        mp.herald_split("chi", "Psi+")
    with pytest.raises(mp.ConvergenceError):
        mp.report("unitary", "[device]\nn = 5\nmax_steps = 10\n", mode="float")
