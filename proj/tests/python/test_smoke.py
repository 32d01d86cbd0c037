# Copyright 2026 The qotm developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end smoke tests of the python bindings."""

import json
import math

import numpy as np
import pytest

import qotm

ALPHA = 0.5 + 0.5 / math.sqrt(2.0)


def reference_bb84(x: str, theta: str) -> np.ndarray:
    """Independent construction of |x>_theta by explicit Kronecker products."""
    single = {
        ("0", "+"): np.array([1.0, 0.0]),
        ("1", "+"): np.array([0.0, 1.0]),
        ("0", "x"): np.array([1.0, 1.0]) / math.sqrt(2.0),
        ("1", "x"): np.array([1.0, -1.0]) / math.sqrt(2.0),
    }
    state = np.array([1.0])
    for xi, ti in zip(x, theta):
        state = np.kron(state, single[(xi, ti)])
    return state


def test_alpha_constant():
    assert qotm.ALPHA == pytest.approx(ALPHA, abs=1e-15)
    assert qotm.ALPHA == pytest.approx(math.cos(math.pi / 8.0) ** 2, abs=1e-15)


@pytest.mark.parametrize(
    "x,theta",
    [("0", "+"), ("1", "x"), ("01", "+x"), ("10", "+x"), ("0110", "x+x+")],
)
def test_prepare_bb84_matches_kron_reference(x, theta):
    amps = np.array(qotm.prepare_bb84(x, theta))
    assert np.allclose(amps, reference_bb84(x, theta), atol=1e-12)


def test_hadamard_swaps_bases():
    rotated = np.array(qotm.apply_hadamard_all(qotm.prepare_bb84("01", "+x")))
    assert np.allclose(rotated, reference_bb84("01", "x+"), atol=1e-12)


def test_measurement_is_seed_deterministic():
    a = qotm.RandomStream(5)
    b = qotm.RandomStream(5)
    amps = qotm.prepare_bb84("0101", "x+x+")
    outcome_a, post_a = qotm.measure_computational(amps, a)
    outcome_b, post_b = qotm.measure_computational(amps, b)
    assert outcome_a == outcome_b
    assert np.allclose(np.array(post_a), np.array(post_b), atol=0.0)


def test_verify_query_checks_the_right_positions():
    assert qotm.verify_query(0, 1, "01", "+x", "00", 0) == 0
    assert qotm.verify_query(0, 1, "01", "+x", "10", 0) is None
    assert qotm.verify_query(0, 1, "01", "+x", "11", 1) == 1
    assert qotm.verify_query(0, 1, "01", "+x", "10", 1) is None


def test_wrap_budget_and_replay():
    wrap = qotm.WrapInstance(0, 1, "0101", "+x+x", budget=3)
    assert wrap.query_budget == 3
    assert wrap.run("0101", 0) == 0
    assert wrap.run("0101", 0) == 0  # identical repeat, identical answer
    assert wrap.run("1010", 0) is None
    assert wrap.queries_used == 3
    assert wrap.replay_matches()
    with pytest.raises(qotm.BudgetExceededError):
        wrap.run("0101", 0)


def test_ideal_otm_single_use():
    otm = qotm.IdealOTM(1, 0)
    assert otm.execute(0) == 1
    assert otm.consumed
    with pytest.raises(qotm.AlreadyConsumedError):
        otm.execute(1)


def close_to(a, b):
    return a == pytest.approx(b, rel=1e-12)


def test_bound_formulas():
    assert close_to(qotm.noninteractive_bound(1), ALPHA)
    assert close_to(qotm.noninteractive_bound(40), ALPHA**40)
    assert close_to(qotm.interactive_bound(40, 10), 90.0 * ALPHA**40)
    assert qotm.interactive_bound(4, 10) == 1.0
    assert qotm.interactive_bound(12, 1) == 0.0
    assert close_to(qotm.fixed_output_bound(3, 2, 0.1), 0.6)
    with pytest.raises(ValueError):
        qotm.noninteractive_bound(0)


def test_exact_breidbart_matches_alpha_power():
    for n in range(1, 7):
        assert qotm.exact_breidbart_both_accept(n) == pytest.approx(
            ALPHA**n, abs=1e-10
        )


def test_numeric_search_attains_alpha_at_pi_over_8():
    value, angle = qotm.numeric_search_n1(1000)
    assert value == pytest.approx(ALPHA, abs=1e-9)
    assert math.fmod(angle, math.pi / 2.0) == pytest.approx(
        math.pi / 8.0, abs=2.0 * math.pi / 1000.0
    )


def test_verify_sdp_reports_the_optimum():
    report = qotm.verify_sdp()
    assert report["value"] == pytest.approx(ALPHA, abs=1e-10)
    assert abs(report["duality_gap"]) <= 1e-10
    names = {c["name"] for c in report["constraints"]}
    assert "primal_psd" in names
    assert "dual_block" in names
    assert all(c["slack"] >= -1e-10 for c in report["constraints"])


def test_run_cli_protocol_round_trip():
    code, artifact = qotm.run_cli("protocol", n=4, trials=100, seed=11)
    assert code == 0
    payload = json.loads(artifact)
    assert payload["success_frequency"] == 1.0
    assert payload["verdict"] == "pass"


def test_run_cli_is_deterministic():
    first = qotm.run_cli("attack", attack="breidbart", n=4, trials=2000, seed=7)
    second = qotm.run_cli("attack", attack="breidbart", n=4, trials=2000, seed=7)
    assert first == second
    assert first[0] == 0


def test_run_cli_usage_error():
    code, artifact = qotm.run_cli("attack", attack="nope", n=4, trials=10)
    assert code == 2
    assert artifact.startswith("usage error: ")
